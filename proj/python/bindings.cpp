#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "hadamard/barycenter.hpp"
#include "hadamard/errors.hpp"
#include "hadamard/horosphere.hpp"
#include "hadamard/io.hpp"
#include "hadamard/lipschitz.hpp"

namespace py = pybind11;
using namespace hadamard;
using io::Json;

namespace {

Json to_json(const py::handle& obj) {
  if (obj.is_none()) return nullptr;
  if (py::isinstance<py::bool_>(obj)) return obj.cast<bool>();
  if (py::isinstance<py::int_>(obj)) return obj.cast<long long>();
  if (py::isinstance<py::float_>(obj)) return obj.cast<double>();
  if (py::isinstance<py::str>(obj)) return obj.cast<std::string>();
  if (py::isinstance<py::dict>(obj)) {
    Json out = Json::object();
    for (auto item : obj.cast<py::dict>()) out[py::str(item.first).cast<std::string>()] = to_json(item.second);
    return out;
  }
  if (py::isinstance<py::list>(obj) || py::isinstance<py::tuple>(obj)) {
    Json out = Json::array();
    for (auto item : obj) out.push_back(to_json(item));
    return out;
  }
  if (py::hasattr(obj, "tolist")) return to_json(obj.attr("tolist")());
  throw InvalidInput("cannot convert Python object of type " + py::str(py::type::handle_of(obj)).cast<std::string>());
}

py::object from_json(const Json& j) {
  switch (j.type()) {
    case Json::value_t::null:
      return py::none();
    case Json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case Json::value_t::number_integer:
      return py::int_(j.get<long long>());
    case Json::value_t::number_unsigned:
      return py::int_(j.get<unsigned long long>());
    case Json::value_t::number_float:
      return py::float_(j.get<double>());
    case Json::value_t::string:
      return py::str(j.get<std::string>());
    case Json::value_t::array: {
      py::list out;
      for (const Json& v : j) out.append(from_json(v));
      return out;
    }
    case Json::value_t::object: {
      py::dict out;
      for (auto it = j.begin(); it != j.end(); ++it) out[py::str(it.key())] = from_json(it.value());
      return out;
    }
    default:
      return py::none();
  }
}

// Points cross the boundary as coordinate lists or {"edge": "A-B", "offset": x}.
Point point(const Space& s, const py::handle& obj) { return io::point_from_json(s, to_json(obj)); }
py::object point_out(const Space& s, const Point& p) {
  const Json j = io::point_to_json(s, p);
  return s.kind() == SpaceKind::tree ? from_json(j) : from_json(j["coords"]);
}

IdealPoint ideal(const Space& s, const py::object& obj) {
  if (obj.is_none()) {
    std::vector<double> e1(s.dim(), 0.0);
    e1[0] = 1.0;
    return s.ideal_toward(e1);
  }
  return io::ideal_from_json(s, to_json(obj));
}

ConvexBody body(const Space& s, const py::list& generators) {
  std::vector<Point> g;
  for (auto item : generators) g.push_back(point(s, item));
  return make_body(s, std::move(g));
}

Configuration configuration(const Space& s, const py::list& points, const std::optional<std::vector<double>>& masses) {
  if (masses && masses->size() != points.size()) throw InvalidInput("masses must match points in length");
  Configuration X;
  for (std::size_t i = 0; i < points.size(); ++i) X.push_back({point(s, points[i]), masses ? (*masses)[i] : 1.0});
  return X;
}

SelectOptions select_options(double horizon, double classify_tol, bool smoothing, double snap_tol, double tol,
                             int max_iters) {
  SelectOptions o;
  o.horizon = horizon;
  o.classify_tol = classify_tol;
  o.smoothing = smoothing;
  o.snap_tol = snap_tol;
  o.barycenter.tol = tol;
  o.barycenter.max_iters = max_iters;
  return o;
}

py::dict scan(const Space& s, const std::string& kind, std::size_t samples, std::uint64_t seed, std::size_t points,
              double epsilon, double scale, bool smoothing, const py::object& xi, unsigned threads) {
  ScanParams p{s};
  p.samples = samples;
  p.seed = seed;
  p.n_points = points;
  p.epsilon = epsilon;
  p.scale = scale;
  p.smoothing = smoothing;
  p.threads = threads;
  if (kind == "selector") p.ideal = ideal(s, xi);
  LipschitzReport r;
  {
    py::gil_scoped_release release;
    r = kind == "shift" ? point_shift_scan(p) : kind == "mass" ? mass_shift_scan(p) : selector_scan(p);
  }
  return from_json(io::to_json(r));
}

}  // namespace

PYBIND11_MODULE(_hadamard, m) {
  m.doc() = "Barycenters, horosphere selectors and Lipschitz scans in Hadamard spaces";

  static py::exception<Error> error(m, "HadamardError", PyExc_ValueError);
  static py::exception<ConvergenceError> convergence(m, "ConvergenceError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ConvergenceError& e) {
      py::set_error(convergence, e.what());
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<Space>(m, "Space")
      .def_static("euclidean", &Space::euclidean, py::arg("dim"))
      .def_static("hyperbolic", &Space::hyperbolic, py::arg("dim"))
      .def_static(
          "from_json", [](const py::object& desc) { return io::space_from_json(to_json(desc)); }, py::arg("descriptor"))
      .def("to_json", [](const Space& s) { return from_json(io::space_to_json(s)); })
      .def_property_readonly("name", &Space::name)
      .def_property_readonly("dim", &Space::dim)
      .def_property_readonly("basepoint", [](const Space& s) { return point_out(s, s.basepoint()); })
      .def(
          "distance", [](const Space& s, py::object x, py::object y) { return s.distance(point(s, x), point(s, y)); },
          py::arg("x"), py::arg("y"))
      .def(
          "geodesic_point",
          [](const Space& s, py::object x, py::object y, double t) {
            return point_out(s, s.geodesic_point(point(s, x), point(s, y), t));
          },
          py::arg("x"), py::arg("y"), py::arg("t"))
      .def(
          "busemann",
          [](const Space& s, py::object x, py::object xi) { return s.busemann(ideal(s, xi), s.basepoint(), point(s, x)); },
          py::arg("x"), py::arg("ideal") = py::none())
      .def(
          "ray_point",
          [](const Space& s, py::object x, double t, py::object xi) {
            return point_out(s, s.ray_point(point(s, x), ideal(s, xi), t));
          },
          py::arg("x"), py::arg("s"), py::arg("ideal") = py::none())
      .def(
          "random_point", [](const Space& s, std::uint64_t seed, double scale) { return point_out(s, s.random_point(seed, scale)); },
          py::arg("seed"), py::arg("scale") = 1.0)
      .def("__repr__", [](const Space& s) { return "<Space " + s.name() + ">"; });

  m.def(
      "center_of_mass",
      [](const Space& s, const py::list& points, std::optional<std::vector<double>> masses, double tol, int max_iters) {
        const Configuration X = configuration(s, points, masses);
        BarycenterResult r;
        {
          py::gil_scoped_release release;
          r = center_of_mass(s, X, {tol, max_iters, 7});
        }
        py::dict out = from_json(io::to_json(s, r));
        out["center"] = point_out(s, r.center);
        return out;
      },
      py::arg("space"), py::arg("points"), py::arg("masses") = py::none(), py::arg("tol") = 1e-8,
      py::arg("max_iters") = 200);

  m.def(
      "two_point_center",
      [](const Space& s, py::object a, double ma, py::object b, double mb) {
        return point_out(s, two_point_center(s, {point(s, a), ma}, {point(s, b), mb}));
      },
      py::arg("space"), py::arg("a"), py::arg("mass_a"), py::arg("b"), py::arg("mass_b"));

  m.def(
      "select",
      [](const Space& s, const py::list& generators, py::object xi, bool smoothing, double snap_tol, double horizon,
         double classify_tol, double tol, int max_iters) {
        const Point p = select(s, body(s, generators), ideal(s, xi), s.basepoint(),
                               select_options(horizon, classify_tol, smoothing, snap_tol, tol, max_iters));
        return point_out(s, p);
      },
      py::arg("space"), py::arg("generators"), py::arg("ideal") = py::none(), py::arg("smoothing") = true,
      py::arg("snap_tol") = 1e-4, py::arg("horizon") = 64.0, py::arg("classify_tol") = 1e-6, py::arg("tol") = 1e-8,
      py::arg("max_iters") = 200);

  m.def(
      "classify",
      [](const Space& s, const py::list& generators, py::object xi, double horizon, double tol) {
        return from_json(io::to_json(classify_body(s, body(s, generators), ideal(s, xi), horizon, tol)));
      },
      py::arg("space"), py::arg("generators"), py::arg("ideal") = py::none(), py::arg("horizon") = 64.0,
      py::arg("tol") = 1e-6);

  m.def(
      "limit_separation",
      [](const Space& s, py::object x, py::object y, py::object xi, double horizon, double tol) {
        const LimitSeparation ls = limit_separation(s, point(s, x), point(s, y), ideal(s, xi), horizon, tol);
        return py::make_tuple(ls.value, ls.resolved);
      },
      py::arg("space"), py::arg("x"), py::arg("y"), py::arg("ideal") = py::none(), py::arg("horizon") = 64.0,
      py::arg("tol") = 1e-6);

  for (const auto& [name, kind] : {std::pair<const char*, std::string>{"point_shift_scan", "shift"},
                                   {"mass_shift_scan", "mass"},
                                   {"selector_scan", "selector"}}) {
    m.def(
        name,
        [kind](const Space& s, std::size_t samples, std::uint64_t seed, std::size_t points,
                                   double epsilon, double scale, bool smoothing, py::object xi, unsigned threads) {
          return scan(s, kind, samples, seed, points, epsilon, scale, smoothing, xi, threads);
        },
        py::arg("space"), py::arg("samples") = 500, py::arg("seed") = 7, py::arg("points") = 4,
        py::arg("epsilon") = 1e-2, py::arg("scale") = 2.0, py::arg("smoothing") = true, py::arg("ideal") = py::none(),
        py::arg("threads") = 1);
  }
}
