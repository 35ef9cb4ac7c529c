#pragma once

// Independent checking of certificates emitted by the oracles. Replay rebuilds
// the system from the embedded construction and checks each claimed inequality
// with word comparisons and language membership only; it never reruns a search.

#include <set>
#include <string>

#include "symdyn/oracles.hpp"
#include "symdyn/system.hpp"
#include "symdyn/words.hpp"

namespace symdyn {

struct ReplayResult {
  bool ok = false;
  std::string detail;
};

namespace detail {

struct ReplayFailure : Error {
  using Error::Error;
};

inline void check(bool cond, const std::string& what) {
  if (!cond) throw ReplayFailure(what);
}

inline System replay_system(const json& header) {
  System sys = build_system(header.at("construction"), header.value("name", ""));
  check(sys.hash() == header.at("hash").get<std::string>(), "construction hash mismatch");
  return sys;
}

inline CenteredWord admissible(const System& sys, const json& text) {
  auto w = parse_centered(text.get<std::string>(), sys.alphabet_size());
  check(sys.language->contains(w.symbols()), "inadmissible window " + to_string(w));
  return w;
}

// Tuple of admissible windows, all extending `center`, pairwise separated at
// every time in [from, to].
inline void check_separated_tuple(const System& sys, const json& tuple, const CenteredWord& center,
                                  long from, long to, int K, std::size_t m) {
  check(tuple.size() == m, "tuple has the wrong arity");
  std::vector<CenteredWord> ws;
  for (const auto& t : tuple) {
    ws.push_back(admissible(sys, t));
    check(ws.back().contains(center.left()) && ws.back().contains(center.right()) &&
              agree_on(ws.back(), center, center.left(), center.right()),
          "tuple member leaves the neighbourhood");
  }
  for (std::size_t i = 0; i < ws.size(); ++i) {
    for (std::size_t j = i + 1; j < ws.size(); ++j) {
      for (long g = from; g <= to; ++g) {
        check(separated_at(ws[i], ws[j], g, K),
              "members " + std::to_string(i) + "," + std::to_string(j) + " not separated at " +
                  std::to_string(g));
      }
    }
  }
}

inline void replay_sensitivity(const json& c, bool block) {
  System sys = replay_system(c.at("system"));
  const int K = c.at("scale").get<int>();
  const auto m = c.at("m").get<std::size_t>();
  const long L = c.at("cylinder_radius").get<long>();
  const long B = block ? c.at("half_length").get<long>() : 0;
  std::set<Word> covered;
  for (const auto& w : c.at("witnesses")) {
    auto cyl = parse_centered(w.at("cylinder").get<std::string>(), sys.alphabet_size());
    check(cyl.left() == -L && cyl.right() == L, "cylinder radius mismatch");
    const long t = block ? w.at("h").get<long>() : w.at("g").get<long>();
    check_separated_tuple(sys, w.at("tuple"), cyl, t - B, t + B, K, m);
    covered.insert(cyl.symbols());
  }
  const auto& all = sys.language->words(static_cast<std::size_t>(2 * L + 1));
  check(covered.size() == all.size(), "witnesses do not cover every cylinder");
  for (const auto& u : all) check(covered.contains(u), "cylinder " + to_string(u) + " uncovered");
}

inline void replay_point(const json& c) {
  System sys = replay_system(c.at("system"));
  check(sys.substitution.has_value(), "point certificate needs a substitution system");
  const auto seed = seed_spec_from_json(c.at("seed"));
  const int K = c.at("scale").get<int>();
  const auto m = c.at("m").get<std::size_t>();
  check(!c.at("witnesses").empty(), "no witnesses");
  for (const auto& w : c.at("witnesses")) {
    const long W = w.at("W").get<long>();
    auto center = seed_window(*sys.substitution, seed.seed, W, seed.shift);
    check(to_string(center) == w.at("center").get<std::string>(), "center does not match the seed");
    const long g = w.at("g").get<long>();
    check_separated_tuple(sys, w.at("tuple"), center, g, g, K, m);
  }
}

inline void replay_cover(const json& c) {
  System sys = replay_system(c.at("system"));
  check(sys.substitution.has_value(), "cover certificate needs a substitution system");
  const auto seed = seed_spec_from_json(c.at("seed"));
  const int K = c.at("scale").get<int>();
  const auto m = c.at("m").get<std::size_t>();
  for (const auto& w : c.at("gaps")) {
    const long W = w.at("W").get<long>();
    auto center = seed_window(*sys.substitution, seed.seed, W, seed.shift);
    check(to_string(center) == w.at("center").get<std::string>(), "center does not match the seed");
    const long s = w.at("start").get<long>(), len = w.at("length").get<long>();
    check_separated_tuple(sys, w.at("tuple"), center, s, s + len - 1, K, m);
  }
}

inline void replay_proximal_pair(const json& c) {
  const auto alphabet = c.at("alphabet").get<std::size_t>();
  auto x = parse_centered(c.at("x").get<std::string>(), alphabet);
  auto y = parse_centered(c.at("y").get<std::string>(), alphabet);
  check(close_at(x, y, c.at("g").get<long>(), c.at("scale").get<int>()), "windows are not close");
}

inline void replay_regional(const json& c) {
  System sys = replay_system(c.at("system"));
  const int K = c.at("scale").get<int>();
  const long g = c.at("g").get<long>();
  const auto& orig = c.at("tuple");
  const auto& pert = c.at("perturbed");
  check(orig.size() == pert.size() && orig.size() >= 2, "tuple size mismatch");
  std::vector<CenteredWord> ws;
  for (std::size_t i = 0; i < orig.size(); ++i) {
    auto x = parse_centered(orig[i].get<std::string>(), sys.alphabet_size());
    auto y = admissible(sys, pert[i]);
    check(agree_on(x, y, -K, K), "perturbation is not within 2^-K");
    ws.push_back(y);
  }
  for (std::size_t i = 1; i < ws.size(); ++i) {
    check(close_at(ws[0], ws[i], g, K), "perturbed points are not close at g");
  }
}

}  // namespace detail

inline ReplayResult replay(const json& certificate) {
  try {
    detail::check(certificate.value("schema_version", 0) == kCertificateSchema,
                  "unsupported schema_version");
    const auto kind = certificate.at("kind").get<std::string>();
    if (kind == "m-sensitivity") {
      detail::replay_sensitivity(certificate, false);
    } else if (kind == "block-m-sensitivity") {
      detail::replay_sensitivity(certificate, true);
    } else if (kind == "point-counterexample") {
      detail::replay_point(certificate);
    } else if (kind == "cover-gap") {
      detail::replay_cover(certificate);
    } else if (kind == "proximal-pair") {
      detail::replay_proximal_pair(certificate);
    } else if (kind == "regional-proximal") {
      detail::replay_regional(certificate);
    } else {
      return {false, "unknown certificate kind '" + kind + "'"};
    }
    return {true, kind + " certificate verified"};
  } catch (const detail::ReplayFailure& e) {
    return {false, e.what()};
  } catch (const std::exception& e) {
    return {false, std::string("malformed certificate: ") + e.what()};
  }
}

}  // namespace symdyn
