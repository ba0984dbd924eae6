#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "coalg.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "report.hpp"
#include "setcore.hpp"
#include "tannaka.hpp"
#include "vflock.hpp"

namespace herdkit {

// Ordered keys keep serialized output byte-stable across runs.
using Json = nlohmann::ordered_json;

// In-memory image of a "structure" file: a comonoid plus whichever optional
// maps the file carries. Which equations it can satisfy depends on which
// maps are present; converters below enforce that.
struct StructureFile {
  std::size_t dim = 0;
  RatMat delta;  // dim^2 x dim
  RatMat eps;    // 1 x dim
  std::optional<RatMat> mu, eta, nu, q;

  friend bool operator==(const StructureFile&, const StructureFile&) = default;
};

namespace iodetail {

inline const Json& member(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw SchemaError(path + "/" + key, "missing field");
  return *it;
}

// Accepts both unsigned and non-negative signed numbers; json built in memory
// stores int literals signed while parsed files store them unsigned.
inline bool nonneg_int(const Json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0);
}

inline std::size_t count_field(const Json& j, const std::string& key, const std::string& path) {
  const Json& v = member(j, key, path);
  if (!nonneg_int(v))
    throw SchemaError(path + "/" + key, "expected a non-negative integer");
  return v.get<std::size_t>();
}

inline std::size_t index_at(const Json& v, std::size_t bound, const std::string& path) {
  if (!nonneg_int(v) || v.get<std::size_t>() >= bound)
    throw SchemaError(path, "expected an integer below " + std::to_string(bound));
  return v.get<std::size_t>();
}

inline std::vector<std::size_t> index_array(const Json& j, const std::string& key,
                                            std::size_t length, std::size_t bound,
                                            const std::string& path) {
  const Json& a = member(j, key, path);
  if (!a.is_array() || a.size() != length)
    throw SchemaError(path + "/" + key,
                      "expected an array of " + std::to_string(length) + " entries");
  std::vector<std::size_t> out;
  out.reserve(length);
  for (std::size_t i = 0; i < length; ++i)
    out.push_back(index_at(a[i], bound, path + "/" + key + "/" + std::to_string(i)));
  return out;
}

inline void expect_kind(const Json& j, const std::string& kind, const std::string& path) {
  const Json& k = member(j, "kind", path);
  if (!k.is_string() || k.get<std::string>() != kind)
    throw SchemaError(path + "/kind", "expected \"" + kind + "\"");
}

}  // namespace iodetail

inline std::string kind_of(const Json& j, const std::string& path) {
  const Json& k = iodetail::member(j, "kind", path);
  if (!k.is_string()) throw SchemaError(path + "/kind", "expected a string");
  return k.get<std::string>();
}

inline Json read_json_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw SchemaError(file.string(), "cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError(file.string(), e.what());
  }
}

inline void write_json_file(const std::filesystem::path& file, const Json& j) {
  std::ofstream out(file);
  if (!out) throw SchemaError(file.string(), "cannot open file for writing");
  out << j.dump(2) << "\n";
}

// Matrices are {"rows", "cols", "entries"} with row-major entries written as
// exact rational strings, "p" or "p/q".
inline Json matrix_to_json(const RatMat& m) {
  Json entries = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) entries.push_back(rat_to_string(m.at(r, c)));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

inline RatMat matrix_from_json(const Json& j, const std::string& path) {
  const std::size_t rows = iodetail::count_field(j, "rows", path);
  const std::size_t cols = iodetail::count_field(j, "cols", path);
  const Json& entries = iodetail::member(j, "entries", path);
  if (!entries.is_array() || entries.size() != rows * cols)
    throw SchemaError(path + "/entries",
                      "expected an array of " + std::to_string(rows * cols) + " entries");
  RatMat m(rows, cols);
  for (std::size_t i = 0; i < rows * cols; ++i) {
    const std::string epath = path + "/entries/" + std::to_string(i);
    if (!entries[i].is_string()) throw SchemaError(epath, "expected a rational string");
    try {
      m.at(i / cols, i % cols) = rat_from_string(entries[i].get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw SchemaError(epath, e.what());
    }
  }
  return m;
}

inline Json heap_to_json(const HeapTable& h) {
  return Json{{"kind", "heap"}, {"size", h.size}, {"q", h.q}};
}

inline HeapTable heap_from_json(const Json& j, const std::string& path) {
  iodetail::expect_kind(j, "heap", path);
  HeapTable h;
  h.size = iodetail::count_field(j, "size", path);
  h.q = iodetail::index_array(j, "q", h.size * h.size * h.size, h.size, path);
  return h;
}

inline Json group_to_json(const GroupTable& g) {
  return Json{{"kind", "group"},
              {"size", g.size},
              {"mul", g.mul},
              {"unit", g.unit},
              {"inv", g.inv}};
}

inline GroupTable group_from_json(const Json& j, const std::string& path) {
  iodetail::expect_kind(j, "group", path);
  GroupTable g;
  g.size = iodetail::count_field(j, "size", path);
  g.mul = iodetail::index_array(j, "mul", g.size * g.size, g.size, path);
  g.unit = iodetail::index_at(iodetail::member(j, "unit", path), g.size, path + "/unit");
  g.inv = iodetail::index_array(j, "inv", g.size, g.size, path);
  return g;
}

inline Json structure_to_json(const StructureFile& s) {
  Json j{{"kind", "structure"},
         {"dim", s.dim},
         {"delta", matrix_to_json(s.delta)},
         {"eps", matrix_to_json(s.eps)}};
  if (s.mu) j["mu"] = matrix_to_json(*s.mu);
  if (s.eta) j["eta"] = matrix_to_json(*s.eta);
  if (s.nu) j["nu"] = matrix_to_json(*s.nu);
  if (s.q) j["q"] = matrix_to_json(*s.q);
  return j;
}

inline StructureFile structure_from_json(const Json& j, const std::string& path) {
  iodetail::expect_kind(j, "structure", path);
  StructureFile s;
  s.dim = iodetail::count_field(j, "dim", path);
  const std::size_t n = s.dim;
  const auto shaped = [&](const char* key, std::size_t rows, std::size_t cols) {
    const std::string mpath = path + "/" + key;
    RatMat m = matrix_from_json(iodetail::member(j, key, path), mpath);
    if (m.rows() != rows || m.cols() != cols)
      throw SchemaError(mpath, "expected a " + std::to_string(rows) + " x " +
                                   std::to_string(cols) + " matrix");
    return m;
  };
  s.delta = shaped("delta", n * n, n);
  s.eps = shaped("eps", 1, n);
  if (j.contains("mu")) s.mu = shaped("mu", n, n * n);
  if (j.contains("eta")) s.eta = shaped("eta", n, 1);
  if (j.contains("nu")) s.nu = shaped("nu", n, n);
  if (j.contains("q")) s.q = shaped("q", n, n * n * n);
  return s;
}

inline StructureFile structure_of(const Comonoid& c) { return {c.dim, c.delta, c.eps, {}, {}, {}, {}}; }

inline StructureFile structure_of(const Herd& h) {
  StructureFile s = structure_of(h.carrier);
  s.q = h.q;
  return s;
}

inline StructureFile structure_of(const Bimonoid& b) {
  StructureFile s = structure_of(b.comonoid());
  s.mu = b.mu;
  s.eta = b.eta;
  return s;
}

inline StructureFile structure_of(const HopfMonoid& h) {
  StructureFile s = structure_of(static_cast<const Bimonoid&>(h));
  s.nu = h.nu;
  return s;
}

inline Comonoid as_comonoid(const StructureFile& s) { return {s.dim, s.delta, s.eps}; }

inline Herd as_herd(const StructureFile& s, const std::string& path) {
  if (!s.q) throw SchemaError(path + "/q", "missing field (a herd needs q)");
  return {as_comonoid(s), *s.q};
}

inline Bimonoid as_bimonoid(const StructureFile& s, const std::string& path) {
  if (!s.mu) throw SchemaError(path + "/mu", "missing field (a bimonoid needs mu)");
  if (!s.eta) throw SchemaError(path + "/eta", "missing field (a bimonoid needs eta)");
  Bimonoid b;
  b.dim = s.dim;
  b.delta = s.delta;
  b.eps = s.eps;
  b.mu = *s.mu;
  b.eta = *s.eta;
  return b;
}

inline HopfMonoid as_hopf(const StructureFile& s, const std::string& path) {
  if (!s.nu) throw SchemaError(path + "/nu", "missing field (a Hopf monoid needs nu)");
  HopfMonoid h;
  static_cast<Bimonoid&>(h) = as_bimonoid(s, path);
  h.nu = *s.nu;
  return h;
}

// Wherever a herd is expected, a string is taken as a path to a structure
// file, resolved relative to `base` (the directory of the referring file).
inline Herd herd_from_json(const Json& j, const std::filesystem::path& base,
                           const std::string& path) {
  if (j.is_string()) {
    const std::filesystem::path file = base / j.get<std::string>();
    return herd_from_json(read_json_file(file), file.parent_path(), file.string());
  }
  return as_herd(structure_from_json(j, path), path);
}

inline Json comodule_to_json(const Comodule& c) {
  return Json{{"kind", "comodule"},
              {"dim", c.dim},
              {"over", structure_to_json(structure_of(c.over))},
              {"rho", matrix_to_json(c.rho)}};
}

inline Comodule comodule_from_json(const Json& j, const std::filesystem::path& base,
                                   const std::string& path) {
  if (j.is_string()) {
    const std::filesystem::path file = base / j.get<std::string>();
    return comodule_from_json(read_json_file(file), file.parent_path(), file.string());
  }
  iodetail::expect_kind(j, "comodule", path);
  Comodule c;
  c.dim = iodetail::count_field(j, "dim", path);
  c.over = herd_from_json(iodetail::member(j, "over", path), base, path + "/over");
  c.rho = matrix_from_json(iodetail::member(j, "rho", path), path + "/rho");
  if (c.rho.rows() != c.dim * c.over.carrier.dim || c.rho.cols() != c.dim)
    throw SchemaError(path + "/rho",
                      "expected a " + std::to_string(c.dim * c.over.carrier.dim) + " x " +
                          std::to_string(c.dim) + " matrix");
  return c;
}

inline Json diagram_to_json(const Diagram& d) {
  Json objects = Json::array();
  for (const auto& o : d.objects) objects.push_back(comodule_to_json(o));
  Json morphisms = Json::array();
  for (const auto& f : d.morphisms)
    morphisms.push_back(
        Json{{"src", f.src}, {"dst", f.dst}, {"mat", matrix_to_json(f.mat)}});
  return Json{{"kind", "diagram"}, {"objects", std::move(objects)},
              {"morphisms", std::move(morphisms)}};
}

inline Diagram diagram_from_json(const Json& j, const std::filesystem::path& base,
                                 const std::string& path) {
  if (j.is_string()) {
    const std::filesystem::path file = base / j.get<std::string>();
    return diagram_from_json(read_json_file(file), file.parent_path(), file.string());
  }
  iodetail::expect_kind(j, "diagram", path);
  Diagram d;
  const Json& objects = iodetail::member(j, "objects", path);
  if (!objects.is_array()) throw SchemaError(path + "/objects", "expected an array");
  for (std::size_t i = 0; i < objects.size(); ++i)
    d.objects.push_back(
        comodule_from_json(objects[i], base, path + "/objects/" + std::to_string(i)));
  const Json& morphisms = iodetail::member(j, "morphisms", path);
  if (!morphisms.is_array()) throw SchemaError(path + "/morphisms", "expected an array");
  for (std::size_t i = 0; i < morphisms.size(); ++i) {
    const std::string mpath = path + "/morphisms/" + std::to_string(i);
    const Json& mj = morphisms[i];
    Diagram::Morphism f;
    f.src = iodetail::index_at(iodetail::member(mj, "src", mpath), d.objects.size(),
                               mpath + "/src");
    f.dst = iodetail::index_at(iodetail::member(mj, "dst", mpath), d.objects.size(),
                               mpath + "/dst");
    f.mat = matrix_from_json(iodetail::member(mj, "mat", mpath), mpath + "/mat");
    if (f.mat.rows() != d.objects[f.dst].dim || f.mat.cols() != d.objects[f.src].dim)
      throw SchemaError(mpath + "/mat",
                        "expected a " + std::to_string(d.objects[f.dst].dim) + " x " +
                            std::to_string(d.objects[f.src].dim) + " matrix");
    d.morphisms.push_back(std::move(f));
  }
  return d;
}

inline Json witness_to_json(const Witness& w) {
  return Json{{"input", w.input}, {"component", w.component}, {"lhs", w.lhs}, {"rhs", w.rhs}};
}

// By default only the first failed check carries its witness; the rest stay
// name-and-flag so reports on big tensor powers stay small.
inline Json report_to_json(const CheckReport& rep, bool all_witnesses = false) {
  Json checks = Json::array();
  bool shown = false;
  for (const auto& c : rep.checks) {
    Json e{{"name", c.name}, {"passed", c.passed}};
    if (!c.passed && c.witness && (all_witnesses || !shown)) {
      e["witness"] = witness_to_json(*c.witness);
      shown = true;
    }
    checks.push_back(std::move(e));
  }
  return Json{{"kind", "report"}, {"all_passed", rep.all_passed()}, {"checks", std::move(checks)}};
}

}  // namespace herdkit
