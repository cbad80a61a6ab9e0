#include "gword/report.hpp"

#include <cstdint>
#include <cstdio>
#include <map>

#include "gword/matrix_io.hpp"

namespace gword {

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json to_json(const ExponentSequence& s) {
  Json pairs = Json::array();
  for (const auto& p : s.pairs) pairs.push_back(Json::array({p.alpha.to_string(), p.beta.to_string()}));
  Json j{{"word", format_word(s)}, {"pairs", pairs}, {"class", s.size()}, {"sign_pattern", sign_pattern(s)}};
  return j;
}

Json to_json(const Spectrum& s) {
  Json out = Json::array();
  for (const auto& z : s.values) out.push_back(Json::array({z.real(), z.imag()}));
  return out;
}

Json to_json(const RationalPolynomial& p) {
  Json out = Json::array();
  for (const auto& c : p) out.push_back(to_string(c));
  return out;
}

Json to_json(const Certificate& c) {
  Json j{{"kind", c.kind_name()}};
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, NegativeTrace>) {
          j["trace"] = to_string(k.value);
        } else if constexpr (std::is_same_v<K, CoefficientSignViolation>) {
          j["index"] = k.index;
          j["coefficient"] = to_string(k.coefficient);
        } else if constexpr (std::is_same_v<K, SturmCount>) {
          j["positive_roots"] = k.positive_roots;
          j["degree"] = k.degree;
          Json counts = Json::array();
          for (const auto& [mult, num] : k.counts) counts.push_back(Json{{"multiplicity", mult}, {"roots", num}});
          j["counts"] = counts;
        } else if constexpr (std::is_same_v<K, PerronPositive>) {
          j["lower_bound"] = k.lower_bound;
        }
      },
      c.kind);
  if (!c.is_none()) j["verified"] = verify_certificate(c);
  j["charpoly_ascending"] = to_json(c.charpoly);
  if (c.product) j["product"] = matrix_to_json(*c.product);
  return j;
}

Json to_json(const Witness& w) {
  Json j;
  j["sequence"] = to_json(w.seq);
  j["provenance"] = w.provenance;
  j["trial"] = w.trial ? Json(*w.trial) : Json(nullptr);
  j["seed"] = w.seed ? Json(*w.seed) : Json(nullptr);
  j["certified"] = w.certified;
  j["note"] = w.note;
  j["a"] = w.a_exact ? matrix_to_json(*w.a_exact) : matrix_to_json(w.a);
  j["b"] = w.b_exact ? matrix_to_json(*w.b_exact) : matrix_to_json(w.b);
  j["spectrum"] = to_json(w.spectrum);
  j["certificate"] = to_json(w.certificate);
  return j;
}

Json to_json(const ReducedClass& r) {
  Json steps = Json::array();
  for (const auto& s : r.trace.steps)
    steps.push_back(Json{{"rule", to_string(s.cancellation.rule)},
                         {"index", s.cancellation.index},
                         {"before", format_pairs(s.before)},
                         {"after", format_pairs(s.after)}});
  return Json{{"m", r.m},
              {"reachable", r.reachable},
              {"steps", steps},
              {"terminal", format_pairs(r.trace.terminal)},
              {"surviving", r.trace.surviving}};
}

Json to_json(const Classification& c) {
  Json j{{"verdict", to_string(c.verdict)},
         {"theorem", c.theorem},
         {"sign_pattern", c.sign_pattern},
         {"m", c.reduced_class_m},
         {"reachable", c.reachable_m_set},
         {"witness_recipe", c.witness_recipe ? Json(*c.witness_recipe) : Json(nullptr)}};
  if (c.other_mode) j["other_beta_mode"] = Json{{"m", c.other_mode->m}, {"reachable", c.other_mode->reachable}};
  return j;
}

Json to_json(const TwoProjectionForm& f) {
  Json blocks = Json::array();
  std::map<std::string, std::size_t> counts;
  for (const auto& b : f.blocks) {
    blocks.push_back(Json{{"kind", to_string(b.kind)}, {"size", b.size}, {"offset", b.offset}, {"angle", b.angle}});
    ++counts[std::string(to_string(b.kind))];
  }
  Json c = Json::object();
  for (const auto& [k, v] : counts) c[k] = v;
  return Json{{"n", f.u.rows()},
              {"blocks", blocks},
              {"block_counts", c},
              {"orthogonality_residual", f.orthogonality_residual},
              {"p_residual", f.p_residual},
              {"q_residual", f.q_residual}};
}

}  // namespace gword
