#pragma once

// JSON encodings and the append-only KL cache file.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "affchar/characters.hpp"
#include "affchar/coxkl.hpp"
#include "affchar/integral.hpp"
#include "affchar/polynomial.hpp"
#include "affchar/rootsys.hpp"
#include "affchar/scalar.hpp"

namespace affchar {

using Json = nlohmann::ordered_json;

inline Json to_json(const AffineRootSystem& sys) {
  Json j;
  j["type"] = std::string(1, sys.type());
  j["rank"] = sys.rank();
  j["cartan"] = sys.cartan();
  j["marks"] = sys.marks();
  Json eps = Json::array();
  for (const auto& e : sys.symmetrizer()) eps.push_back(to_string(e));
  j["symmetrizer"] = eps;
  return j;
}

inline Json to_json(const Root& r) {
  return Json{{"coords", r.coords}, {"real", r.is_real}, {"mult", r.mult}, {"height", r.height},
              {"delta_degree", r.delta_degree}};
}

inline Json to_json(const IntPolynomial& p) { return Json(p.coefficients()); }

inline IntPolynomial polynomial_from_json(const Json& j) { return IntPolynomial(j.get<std::vector<std::int64_t>>()); }

inline Json to_json(const IntegralSystem& is) {
  Json j;
  j["cutoff"] = is.cutoff;
  j["simple_system"] = is.simple;
  j["stable"] = is.stable;
  j["diagram"] = is.diagram;
  Json comps = Json::array();
  for (const auto& c : is.components) comps.push_back(Json{{"nodes", c.nodes}, {"type", to_string(c.type)}});
  j["components"] = comps;
  j["zero_simples"] = is.zero_simples;
  j["w0_longest_length"] = is.w0_longest_length;
  j["positive_roots"] = is.positive_roots;
  return j;
}

inline Json to_json(const CharSeries& s) {
  Json rows = Json::array();
  for (const auto& [nu, m] : s.coeffs) rows.push_back(Json{{"offset", nu}, {"mult", m}});
  return Json{{"cutoff", s.cutoff}, {"rows", rows}};
}

inline std::string weight_labels_string(const AffineRootSystem& sys, const Weight& w) {
  std::string out;
  for (const auto& l : w.labels(sys)) out += (out.empty() ? "" : ",") + l.str();
  return out;
}

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// Append-only JSON-lines cache of (x, y) -> (P, Q) for one Coxeter system.
// The first line is a header naming the system; a file written for another
// system is ignored and left untouched.
class KLCache {
 public:
  static constexpr int kVersion = 1;
  static constexpr const char* kFormat = "affchar-kl-cache";

  // The environment variable AFFCHAR_CACHE overrides the given path.
  static std::string resolve_path(const std::string& path) {
    if (const char* env = std::getenv("AFFCHAR_CACHE"); env && *env) return env;
    return path;
  }

  KLCache(std::string path, const ReflectionGroup& G) : path_(std::move(path)), id_(G.id()) {
    std::ifstream in(path_);
    if (!in) return;  // new file
    std::string line;
    if (!std::getline(in, line)) return;
    try {
      auto h = Json::parse(line);
      if (h.value("format", "") != kFormat || h.value("version", 0) != kVersion ||
          h.value("system_hash", "") != hash_string() || h.value("system_id", "") != id_) {
        warning_ = "cache " + path_ + " belongs to another system or format; ignoring it";
        usable_ = false;
        return;
      }
    } catch (const std::exception&) {
      warning_ = "cache " + path_ + " has an unreadable header; ignoring it";
      usable_ = false;
      return;
    }
    header_written_ = true;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      try {
        auto e = Json::parse(line);
        entries_[{e["x"].get<Canonical>(), e["y"].get<Canonical>()}] = {polynomial_from_json(e["P"]),
                                                                         polynomial_from_json(e["Q"])};
      } catch (const std::exception&) {
        warning_ = "cache " + path_ + " has a truncated entry; it was skipped";
      }
    }
  }

  bool usable() const { return usable_; }
  const std::string& warning() const { return warning_; }
  std::size_t size() const { return entries_.size(); }

  std::optional<std::pair<IntPolynomial, IntPolynomial>> lookup(const Canonical& x, const Canonical& y) const {
    auto it = entries_.find({x, y});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  void append(const Canonical& x, const Canonical& y, const IntPolynomial& P, const IntPolynomial& Q) {
    if (!usable_ || entries_.count({x, y})) return;
    std::ofstream out(path_, std::ios::app);
    if (!out) throw std::runtime_error("cannot write cache " + path_);
    if (!header_written_) {
      out << Json{{"format", kFormat}, {"version", kVersion}, {"system_id", id_}, {"system_hash", hash_string()}}.dump()
          << '\n';
      header_written_ = true;
    }
    out << Json{{"x", x}, {"y", y}, {"P", to_json(P)}, {"Q", to_json(Q)}}.dump() << '\n';
    entries_[{x, y}] = {P, Q};
  }

 private:
  std::string hash_string() const {
    std::ostringstream os;
    os << std::hex << fnv1a64(id_);
    return os.str();
  }

  std::string path_;
  std::string id_;
  bool usable_ = true;
  bool header_written_ = false;
  std::string warning_;
  std::map<std::pair<Canonical, Canonical>, std::pair<IntPolynomial, IntPolynomial>> entries_;
};

}  // namespace affchar
