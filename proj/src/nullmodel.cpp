#include "rrmap/nullmodel.hpp"

#include <cmath>
#include <stdexcept>

#include "rrmap/census.hpp"
#include "rrmap/shard.hpp"
#include "rrmap/stepper.hpp"

namespace rrmap {

LengthModel length_model_from_name(const std::string& name) {
  if (name == "low") return LengthModel::Low;
  if (name == "mid") return LengthModel::Mid;
  if (name == "high") return LengthModel::High;
  throw std::invalid_argument("unknown length model '" + name + "'");
}

const char* length_model_name(LengthModel m) {
  switch (m) {
    case LengthModel::Low: return "low";
    case LengthModel::Mid: return "mid";
    case LengthModel::High: return "high";
  }
  return "?";
}

double predict_length(LengthModel model, const BigInt& n0) {
  if (mpz_sgn(n0.get_mpz_t()) <= 0) throw std::invalid_argument("n0 must be >= 1");
  const double ln_n0 = log_big(n0);
  const double ln_drop = std::log(4.0 / 3.0);
  switch (model) {
    case LengthModel::Low:
      return ln_n0 / std::log(2.0);
    case LengthModel::Mid:
      return 2.0 * ln_n0 / ln_drop;
    case LengthModel::High: {
      const double k = static_cast<double>(bit_length(n0));
      const double ln_peak = ln_n0 + k * std::log(1.5);
      return k + 2.0 * ln_peak / ln_drop;
    }
  }
  throw std::logic_error("unreachable");
}

double window_factor(const DecayProfile& profile) {
  double total = 0;
  double ln_factor = 0;
  for (const auto& c : profile.components) {
    if (c.factor.num <= 0 || c.factor.den <= 0)
      throw std::invalid_argument("profile factors must be positive");
    total += c.count;
    ln_factor += c.count * std::log(c.factor.to_double());
  }
  if (std::abs(total - profile.window) > 1e-9)
    throw std::invalid_argument("component counts must sum to the window");
  return std::exp(ln_factor);
}

namespace {
// m/10 as an exact rational; 1e-12 resolution so the boundary solver can
// move m well below its 1e-6 tolerance
Rational m_over_10(double m) {
  return Rational(static_cast<std::int64_t>(std::llround(m * 1e12)),
                  10'000'000'000'000LL);
}
}  // namespace

DecayProfile p4_eta1(double m) {
  return DecayProfile{"p4-eta1",
                      10,
                      {{"even", 5, Rational(1, 2)},
                       {"mod5", 1, m_over_10(m)},
                       {"else", 4, Rational(3, 2)}}};
}

DecayProfile p4_eta2(double m) {
  return DecayProfile{"p4-eta2",
                      10,
                      {{"even", 5, Rational(1, 2)},
                       {"mod5", 1.35, m_over_10(m)},
                       {"else", 3.65, Rational(3, 2)}}};
}

DecayProfile named_profile(const std::string& name) {
  if (name == "p1")
    return {"p1", 10, {{"even", 5, Rational(1, 2)}, {"else", 5, Rational(3, 2)}}};
  if (name == "p2-simple")
    return {"p2-simple",
            6,
            {{"even", 3, Rational(1, 2)},
             {"mod3", 1, Rational(7, 6)},
             {"else", 2, Rational(5, 2)}}};
  if (name == "p2-enriched")
    return {"p2-enriched",
            10,
            {{"even", 5, Rational(1, 2)},
             {"mod3", 2.08, Rational(7, 6)},
             {"else", 2.92, Rational(5, 2)}}};
  if (name == "p6-7")
    return {"p6-7",
            10,
            {{"even", 5, Rational(1, 2)},
             {"mod3", 5.0 / 3.0, Rational(7, 6)},
             {"mod5", 2.0 / 3.0, Rational(7, 10)},
             {"else", 8.0 / 3.0, Rational(7, 2)}}};
  if (name.rfind("p4-eta1:", 0) == 0) {
    DecayProfile p = p4_eta1(std::stod(name.substr(8)));
    p.name = name;
    return p;
  }
  if (name.rfind("p4-eta2:", 0) == 0) {
    DecayProfile p = p4_eta2(std::stod(name.substr(8)));
    p.name = name;
    return p;
  }
  throw std::invalid_argument("unknown profile '" + name + "'");
}

double predicted_length_from_factor(double factor, double window, const BigInt& n0,
                                    const BigInt& loop_min) {
  if (factor <= 0) throw std::domain_error("decay factor must be positive");
  if (factor >= 1)
    throw std::domain_error("factor >= 1: the model does not predict descent");
  if (window <= 0) throw std::invalid_argument("window must be positive");
  double drop = log_big(n0) - log_big(loop_min);
  if (drop < 0) drop = 0;
  return window * drop / -std::log(factor);
}

double stability_boundary(const std::function<DecayProfile(double)>& family, double lo,
                          double hi, double tol) {
  auto g = [&](double m) { return window_factor(family(m)) - 1.0; };
  double glo = g(lo), ghi = g(hi);
  if (glo == 0) return lo;
  if (ghi == 0) return hi;
  if (glo > 0 || ghi < 0)
    throw std::domain_error("no stability boundary bracketed in [" + std::to_string(lo) +
                            ", " + std::to_string(hi) + "]");
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (g(mid) < 0) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<BigInt> random_odd_starts(std::uint64_t count, const BigInt& lo,
                                      const BigInt& hi, std::uint64_t seed) {
  if (hi < lo + 1) throw std::invalid_argument("range too small to sample odd values");
  BigInt span = hi - lo + 1;
  std::vector<BigInt> out;
  out.reserve(count);
  gmp_randstate_t state;
  gmp_randinit_mt(state);
  gmp_randseed_ui(state, seed);
  for (std::uint64_t i = 0; i < count; ++i) {
    BigInt v;
    do {
      mpz_urandomm(v.get_mpz_t(), state, span.get_mpz_t());
      v += lo;
    } while (mpz_even_p(v.get_mpz_t()));
    out.push_back(v);
  }
  gmp_randclear(state);
  return out;
}

ResidueProfile residue_enrichment(const Program& prog, std::span<const BigInt> starts,
                                  const std::vector<std::uint64_t>& divisors,
                                  const StopPolicy& caps) {
  for (std::uint64_t d : divisors)
    if (d < 3 || d % 2 == 0)
      throw std::invalid_argument("divisors must be odd and >= 3");

  LoopTracker tracker(prog);
  Stepper st(prog);

  ResidueProfile out;
  out.trajectories = starts.size();
  std::map<std::uint64_t, std::uint64_t> hits;
  for (std::uint64_t d : divisors) hits[d] = 0;

  for (const BigInt& n0 : starts) {
    // know the loop first so its members can be excluded from the tally
    auto c = tracker.classify(n0, caps);
    if (!c.loop) {
      ++out.capped;
      continue;
    }
    st.reset(n0);
    for (std::uint64_t i = 0; i < c.steps_to_member; ++i) {
      st.step();
      if (i + 1 == c.steps_to_member) break;  // first loop member: stop before it
      bool odd =
          st.small() ? (st.small_value() & 1) != 0 : mpz_odd_p(st.big_value().get_mpz_t()) != 0;
      if (!odd) continue;
      ++out.odd_terms;
      for (std::uint64_t d : divisors) {
        bool divisible = st.small() ? st.small_value() % d == 0
                                    : mpz_divisible_ui_p(st.big_value().get_mpz_t(), d);
        if (divisible) ++hits[d];
      }
    }
  }
  if (out.odd_terms == 0 && out.capped == starts.size() && !starts.empty())
    throw NonConvergent("every sampled trajectory hit a cap");
  for (auto& [d, h] : hits)
    out.fraction_by_divisor[d] =
        out.odd_terms == 0 ? 0.0
                           : static_cast<double>(h) / static_cast<double>(out.odd_terms);
  return out;
}

PersistenceResult persistence_rate(const Program& prog, std::uint64_t lo, std::uint64_t hi,
                                   const StopPolicy& caps, unsigned shards) {
  if (lo < 1 || hi < lo) throw std::invalid_argument("need 1 <= lo <= hi");
  const std::uint64_t n_values = hi - lo + 2;  // lengths for lo .. hi+1

  struct Part {
    std::vector<std::optional<std::uint64_t>> lengths;
    std::uint64_t capped = 0;
  };
  Part all = sharded_reduce(
      n_values, shards, Part{},
      [&](std::uint64_t begin, std::uint64_t len) {
        Part part;
        part.lengths.reserve(len);
        LoopTracker tracker(prog);
        for (std::uint64_t i = begin; i < begin + len; ++i) {
          auto s = tracked_sequence_length(tracker, from_u64(lo + i), caps);
          if (!s) ++part.capped;
          part.lengths.push_back(s);
        }
        return part;
      },
      [](Part& into, Part& part) {
        into.lengths.insert(into.lengths.end(), part.lengths.begin(), part.lengths.end());
        into.capped += part.capped;
      });

  PersistenceResult out;
  out.capped = all.capped;
  for (std::uint64_t i = 0; i + 1 < all.lengths.size(); ++i) {
    if (!all.lengths[i] || !all.lengths[i + 1]) continue;
    ++out.pairs;
    if (*all.lengths[i] == *all.lengths[i + 1]) ++out.equal;
  }
  out.rate = out.pairs == 0 ? 0.0
                            : static_cast<double>(out.equal) / static_cast<double>(out.pairs);
  return out;
}

}  // namespace rrmap
