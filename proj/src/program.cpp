#include "rrmap/program.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

#include "rrmap/dsl.hpp"

namespace rrmap {

Program make_p1() {
  return Program{"p1", {StepRule::even(), StepRule::otherwise(3, +1)}};
}

Program make_p1m() {
  return Program{"p1m", {StepRule::even(), StepRule::otherwise(3, -1)}};
}

Program make_p2() {
  return Program{"p2",
                 {StepRule::even(), StepRule::divisible_by(3, 7, 3, +1),
                  StepRule::otherwise(5, +1)}};
}

Program make_p4(std::uint64_t m) {
  if (m % 2 == 0) throw std::invalid_argument("p4: m must be odd");
  if (m < 7) throw std::invalid_argument("p4: m must be >= 7");
  return Program{"p4:" + std::to_string(m),
                 {StepRule::even(), StepRule::divisible_by(5, m, 5, +1),
                  StepRule::otherwise(3, +1)}};
}

Program make_p6(std::uint64_t excluded_prime) {
  static const std::set<std::uint64_t> allowed{5, 7, 11, 13};
  if (!allowed.count(excluded_prime))
    throw std::invalid_argument("p6: excluded prime must be one of 5, 7, 11, 13");
  Program prog;
  prog.id = "p6:" + std::to_string(excluded_prime);
  prog.rules.push_back(StepRule::even());
  for (std::uint64_t d = 3; d < excluded_prime; d += 2)
    if (is_small_prime(d))
      prog.rules.push_back(StepRule::divisible_by(d, excluded_prime, d, +1));
  prog.rules.push_back(StepRule::otherwise(excluded_prime, +1));
  return prog;
}

Program make_p9(std::uint64_t p, SignOrder order) {
  if (p < 5 || !is_small_prime(p))
    throw std::invalid_argument("p9: divisor must be a prime >= 5");
  std::int32_t first = order == SignOrder::MinusPlus ? -1 : +1;
  return Program{"p9:" + std::to_string(p) + ":" +
                     (order == SignOrder::MinusPlus ? "-+" : "+-"),
                 {StepRule::even(), StepRule::divisible_by(p, 3, 1, first),
                  StepRule::otherwise(3, -first)}};
}

Program canonical_program(const std::string& name, const std::vector<std::int64_t>& params) {
  auto want = [&](std::size_t n) {
    if (params.size() != n)
      throw std::invalid_argument("program " + name + " takes " + std::to_string(n) +
                                  " parameter(s)");
  };
  if (name == "p1") { want(0); return make_p1(); }
  if (name == "p1m") { want(0); return make_p1m(); }
  if (name == "p2") { want(0); return make_p2(); }
  if (name == "p4") {
    want(1);
    if (params[0] < 0) throw std::invalid_argument("p4: m must be positive");
    return make_p4(static_cast<std::uint64_t>(params[0]));
  }
  if (name == "p6") {
    want(1);
    if (params[0] < 0) throw std::invalid_argument("p6: prime must be positive");
    return make_p6(static_cast<std::uint64_t>(params[0]));
  }
  if (name == "p9") {
    want(2);
    if (params[0] < 0) throw std::invalid_argument("p9: p must be positive");
    if (params[1] != 1 && params[1] != -1)
      throw std::invalid_argument("p9: second parameter is the first offset, +1 or -1");
    return make_p9(static_cast<std::uint64_t>(params[0]),
                   params[1] < 0 ? SignOrder::MinusPlus : SignOrder::PlusMinus);
  }
  throw std::invalid_argument("unknown program name '" + name + "'");
}

Program parse_program_spec(const std::string& spec) {
  if (spec.rfind("dsl:", 0) == 0) {
    Program prog = parse_program_dsl(spec.substr(4));
    prog.id = "dsl:" + print_program(prog);
    return prog;
  }
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : spec) {
    if (ch == ':') { parts.push_back(cur); cur.clear(); }
    else cur.push_back(ch);
  }
  parts.push_back(cur);
  const std::string& name = parts[0];
  auto num_at = [&](std::size_t i) -> std::int64_t {
    try {
      std::size_t pos = 0;
      std::int64_t v = std::stoll(parts.at(i), &pos);
      if (pos != parts[i].size()) throw std::invalid_argument("");
      return v;
    } catch (...) {
      throw std::invalid_argument("program id '" + spec + "': bad numeric parameter");
    }
  };
  if (name == "p1" || name == "p1m" || name == "p2") {
    if (parts.size() != 1) throw std::invalid_argument(name + " takes no parameters");
    return canonical_program(name);
  }
  if (name == "p4" || name == "p6") {
    if (parts.size() != 2)
      throw std::invalid_argument(name + " needs one parameter, e.g. " + name + ":53");
    return canonical_program(name, {num_at(1)});
  }
  if (name == "p9") {
    if (parts.size() != 3)
      throw std::invalid_argument("p9 id looks like p9:<p>:<-+|+->");
    std::int64_t first;
    if (parts[2] == "-+") first = -1;
    else if (parts[2] == "+-") first = +1;
    else throw std::invalid_argument("p9 sign order must be -+ or +-");
    return canonical_program("p9", {num_at(1), first});
  }
  throw std::invalid_argument("unknown program id '" + spec + "'");
}

std::vector<std::string> validate_program(const Program& prog) {
  std::vector<std::string> out;
  const auto& rules = prog.rules;
  if (rules.size() < 2) {
    out.push_back("program needs at least an even rule and an else rule");
    return out;
  }
  if (rules.front().guard != GuardKind::Even)
    out.push_back("first rule must be the even rule");
  if (rules.back().guard != GuardKind::Else)
    out.push_back("last rule must be the else rule");
  std::set<std::uint64_t> divisors;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const StepRule& r = rules[i];
    std::string where = "rule " + std::to_string(i) + " (" + rule_label(r) + "): ";
    switch (r.guard) {
      case GuardKind::Even:
        if (i != 0) out.push_back(where + "even rule only allowed first");
        break;
      case GuardKind::Else:
        if (i + 1 != rules.size()) out.push_back(where + "no rule may follow an else rule");
        break;
      case GuardKind::DivisibleBy:
        if (i == 0) out.push_back(where + "divisible-by rule cannot come first");
        if (r.divisor < 3 || r.divisor % 2 == 0)
          out.push_back(where + "guard divisor must be odd and >= 3");
        if (!divisors.insert(r.divisor).second)
          out.push_back(where + "duplicate guard divisor " + std::to_string(r.divisor));
        break;
    }
    if (r.guard != GuardKind::Even) {
      if (r.multiplier == 0 || r.multiplier % 2 == 0)
        out.push_back(where + "multiplier must be odd");
      if (r.offset != 1 && r.offset != -1)
        out.push_back(where + "offset must be +1 or -1");
      if (r.offset == -1 && r.multiplier < 3)
        out.push_back(where + "offset -1 needs multiplier >= 3 to stay positive");
      if (r.guard == GuardKind::DivisibleBy) {
        if (r.denominator != 1 && r.denominator != r.divisor)
          out.push_back(where + "denominator must be 1 or the guard divisor");
      } else if (r.denominator != 1) {
        out.push_back(where + "else rule denominator must be 1");
      }
    }
  }
  return out;
}

void require_valid(const Program& prog) {
  auto violations = validate_program(prog);
  if (violations.empty()) return;
  std::ostringstream msg;
  msg << "invalid program '" << prog.id << "':";
  for (const auto& v : violations) msg << "\n  - " << v;
  throw std::invalid_argument(msg.str());
}

std::size_t match_rule(const Program& prog, const BigInt& n) {
  if (mpz_sgn(n.get_mpz_t()) <= 0) throw std::invalid_argument("map domain is n >= 1");
  if (mpz_even_p(n.get_mpz_t())) return 0;
  for (std::size_t i = 1; i + 1 < prog.rules.size(); ++i)
    if (mpz_divisible_ui_p(n.get_mpz_t(), prog.rules[i].divisor)) return i;
  return prog.rules.size() - 1;
}

BigInt step(const Program& prog, const BigInt& n) {
  std::size_t idx = match_rule(prog, n);
  const StepRule& rule = prog.rules[idx];
  BigInt v = n;
  if (rule.guard == GuardKind::Even) {
    mpz_tdiv_q_2exp(v.get_mpz_t(), v.get_mpz_t(), 1);
    return v;
  }
  if (rule.denominator > 1)
    mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), rule.denominator);
  mpz_mul_ui(v.get_mpz_t(), v.get_mpz_t(), rule.multiplier);
  if (rule.offset > 0) mpz_add_ui(v.get_mpz_t(), v.get_mpz_t(), 1);
  else mpz_sub_ui(v.get_mpz_t(), v.get_mpz_t(), 1);
  mpz_tdiv_q_2exp(v.get_mpz_t(), v.get_mpz_t(), 1);
  return v;
}

std::pair<std::size_t, Rational> classify_step(const Program& prog, const BigInt& n) {
  std::size_t idx = match_rule(prog, n);
  const StepRule& rule = prog.rules[idx];
  if (rule.guard == GuardKind::Even) return {idx, Rational(1, 2)};
  return {idx, Rational(static_cast<std::int64_t>(rule.multiplier),
                        2 * static_cast<std::int64_t>(rule.denominator))};
}

std::string rule_label(const StepRule& rule) {
  switch (rule.guard) {
    case GuardKind::Even: return "even";
    case GuardKind::DivisibleBy: return "mod" + std::to_string(rule.divisor);
    case GuardKind::Else: return "else";
  }
  return "?";
}

}  // namespace rrmap
