#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "skein/cli.hpp"
#include "skein/errors.hpp"
#include "skein/hsphere.hpp"
#include "skein/ptorus.hpp"

namespace py = pybind11;
using namespace skein;

namespace {

PTCharacter pt_char(const std::vector<cplx>& c) {
  if (c.size() != 4) throw Error(ErrorKind::BadInput, "punctured torus characters have 4 coordinates");
  return {c[0], c[1], c[2], c[3]};
}

HSCharacter hs_char(const std::vector<cplx>& c) {
  if (c.size() != 7) throw Error(ErrorKind::BadInput, "four-holed sphere characters have 7 coordinates");
  return {c[0], c[1], c[2], {c[3], c[4], c[5], c[6]}};
}

std::vector<cplx> coords(const PTCharacter& c) { return {c.z0, c.z1, c.zinf, c.w}; }
std::vector<cplx> coords(const HSCharacter& c) { return {c.z0, c.z1, c.zinf, c.w[0], c.w[1], c.w[2], c.w[3]}; }

py::dict reducibility(const Reducibility& r) {
  py::dict d;
  d["reducible"] = r.reducible;
  d["fast_path"] = r.fast_path;
  d["oracle_dim"] = r.oracle_dim;
  d["graph_reducible"] = r.graph_reducible;
  d["witness_dim"] = r.witness ? py::object(py::int_(r.witness->basis.cols())) : py::object(py::none());
  return d;
}

// One class for both surfaces; the character length selects the surface-specific path.
struct Representation {
  RootContext ctx;
  std::optional<PTRepresentation> pt;
  std::optional<HSRepresentation> hs;

  const CMatrix& m0() const { return pt ? pt->m0 : hs->m0; }
  const CMatrix& m1() const { return pt ? pt->m1 : hs->m1; }
  const CMatrix& minf() const { return pt ? pt->minf : hs->minf; }
  std::string kind() const { return pt ? pt_kind_name(pt->provenance.kind) : hs_kind_name(hs->provenance.kind); }
  double residual() const { return pt ? verify_relations(*pt).max() : verify_relations04(*hs).max(); }
  py::tuple shadow() const {
    if (pt) {
      auto s = classical_shadow_detail(*pt);
      return py::make_tuple(coords(s.ch), s.off_scalar);
    }
    auto s = classical_shadow04_detail(*hs);
    return py::make_tuple(coords(s.ch), s.off_scalar);
  }
  py::dict reduce() const { return reducibility(pt ? is_reducible(*pt) : is_reducible_04(*hs)); }
};

Representation represent_any(const RootContext& ctx, const std::vector<cplx>& c) {
  Representation r{ctx, std::nullopt, std::nullopt};
  if (ctx.surface == Surface::PuncturedTorus) r.pt = represent(ctx, pt_char(c));
  else r.hs = represent04(ctx, hs_char(c));
  return r;
}

py::dict singular(const RootContext& ctx, const std::vector<cplx>& c) {
  py::dict d;
  if (ctx.surface == Surface::PuncturedTorus) {
    auto ch = pt_char(c);
    auto s = classify_singular(ctx, ch);
    d["slice_singular"] = s.slice_singular;
    d["variety_singular"] = s.variety_singular;
    d["azumaya"] = !s.variety_singular;
    d["exceptional"] = is_exceptional(ctx, ch);
    return d;
  }
  auto ch = hs_char(c);
  auto s = classify_singular_04(ctx, ch);
  auto v = azumaya_membership(ctx, ch);
  d["slice_singular"] = s.slice_singular;
  d["variety_singular"] = s.variety_singular;
  d["azumaya"] = v.in_azumaya;
  d["component"] = azumaya_component_name(v.component);
  d["exceptional"] = is_exceptional04(ctx, ch);
  return d;
}

py::list search(const RootContext& ctx, int den_bound) {
  py::list out;
  if (ctx.surface == Surface::PuncturedTorus) {
    for (const auto& p : pt_search_exceptional(ctx, den_bound)) {
      py::dict d;
      d["z"] = std::vector<cplx>{p.z0, p.z1, p.zinf};
      d["W"] = std::vector<cplx>{p.W};
      d["orbit"] = p.orbit;
      out.append(d);
    }
    return out;
  }
  for (const auto& p : hs_search_exceptional(den_bound)) {
    py::dict d;
    d["z"] = p.z;
    d["W"] = p.W;
    d["family"] = hs_family_name(p.family);
    d["orbit"] = p.orbit;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Explicit representations of skein algebras of the punctured torus and the four-holed sphere";

  static py::exception<Error> exc(mod, "SkeinError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object inst = py::reinterpret_borrow<py::object>(exc.ptr())(e.what());
      inst.attr("kind") = kind_name(e.kind());
      PyErr_SetObject(exc.ptr(), inst.ptr());
    }
  });

  py::enum_<Surface>(mod, "Surface")
      .value("PuncturedTorus", Surface::PuncturedTorus)
      .value("FourHoledSphere", Surface::FourHoledSphere);

  py::class_<RootContext>(mod, "RootContext")
      .def_readonly("a", &RootContext::a)
      .def_readonly("m", &RootContext::m)
      .def_readonly("n", &RootContext::n)
      .def_readonly("N", &RootContext::N)
      .def_readonly("D", &RootContext::D)
      .def_readonly("epsilon", &RootContext::epsilon)
      .def_readonly("surface", &RootContext::surface)
      .def_property_readonly("q", &RootContext::q)
      .def("__repr__", [](const RootContext& c) {
        std::ostringstream s;
        s << "RootContext(" << c.a << "/" << c.m << ", " << surface_name(c.surface) << ", D=" << c.D << ")";
        return s.str();
      });

  mod.def(
      "context", [](int a, int m, const std::string& surface) { return make_context(a, m, parse_surface(surface.c_str())); },
      py::arg("a"), py::arg("m"), py::arg("surface") = "ptorus");
  mod.def("cheb", &cheb, py::arg("k"), py::arg("x"));
  mod.def("peripheral_lifts", &peripheral_lifts, py::arg("N"), py::arg("W"));

  py::class_<Representation>(mod, "Representation")
      .def_property_readonly("m0", &Representation::m0)
      .def_property_readonly("m1", &Representation::m1)
      .def_property_readonly("minf", &Representation::minf)
      .def_property_readonly("kind", &Representation::kind)
      .def("residual", &Representation::residual)
      .def("shadow", &Representation::shadow, "(character, off_scalar)")
      .def("reducibility", &Representation::reduce);

  mod.def("represent", &represent_any, py::arg("ctx"), py::arg("character"),
          "character is (z0, z1, zinf, w) or (z0, z1, zinf, w1, w2, w3, w4)");
  mod.def("singular", &singular, py::arg("ctx"), py::arg("character"));
  mod.def("search_exceptional", &search, py::arg("ctx"), py::arg("den_bound") = 8);
  mod.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "skeinrep");
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = run_cli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "returns (exit_code, stdout, stderr)");
}
