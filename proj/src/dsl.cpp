#include "rrmap/dsl.hpp"

#include <cctype>
#include <sstream>

namespace rrmap {
namespace {

class Cursor {
 public:
  explicit Cursor(const std::string& text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      advance();
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool try_consume(char ch) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      advance();
      return true;
    }
    return false;
  }
  void expect(char ch, const std::string& what) {
    if (!try_consume(ch)) fail("expected '" + std::string(1, ch) + "' " + what);
  }
  bool try_keyword(const std::string& kw) {
    skip_ws();
    if (text_.compare(pos_, kw.size(), kw) == 0) {
      for (std::size_t i = 0; i < kw.size(); ++i) advance();
      return true;
    }
    return false;
  }
  std::uint64_t integer(const std::string& what) {
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected integer " + what);
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      std::uint64_t digit = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > (UINT64_MAX - digit) / 10) fail("integer too large " + what);
      v = v * 10 + digit;
      advance();
    }
    return v;
  }
  [[noreturn]] void fail(const std::string& what) { throw DslError(line_, col_, what); }

 private:
  void advance() {
    if (text_[pos_] == '\n') { ++line_; col_ = 1; }
    else ++col_;
    ++pos_;
  }
  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

StepRule parse_rule(Cursor& cur) {
  GuardKind guard;
  std::uint64_t divisor = 0;
  if (cur.try_keyword("even")) {
    guard = GuardKind::Even;
  } else if (cur.try_keyword("mod")) {
    guard = GuardKind::DivisibleBy;
    divisor = cur.integer("after 'mod'");
  } else if (cur.try_keyword("else")) {
    guard = GuardKind::Else;
  } else {
    cur.fail("expected guard: 'even', 'mod<d>' or 'else'");
  }
  cur.expect(':', "after guard");

  if (cur.try_consume('/')) {
    cur.expect('2', "in '/2' action");
    if (guard != GuardKind::Even)
      cur.fail("action '/2' is only valid on the even rule");
    return StepRule::even();
  }
  if (guard == GuardKind::Even) cur.fail("even rule action must be '/2'");

  cur.expect('(', "to open the affine action");
  std::uint64_t q = cur.integer("multiplier");
  cur.expect('n', "after the multiplier");
  std::uint64_t r = 1;
  if (cur.try_consume('/')) r = cur.integer("denominator");
  std::int32_t c;
  if (cur.try_consume('+')) c = +1;
  else if (cur.try_consume('-')) c = -1;
  else cur.fail("expected '+' or '-' before the offset");
  cur.expect('1', "offset must be 1");
  cur.expect(')', "to close the affine action");
  cur.expect('/', "expected ')/2'");
  cur.expect('2', "expected ')/2'");

  if (guard == GuardKind::Else) {
    if (r != 1) cur.fail("else rule cannot divide by a guard divisor");
    return StepRule::otherwise(q, c);
  }
  return StepRule::divisible_by(divisor, q, r, c);
}

}  // namespace

Program parse_program_dsl(const std::string& text) {
  Cursor cur(text);
  Program prog;
  prog.rules.push_back(parse_rule(cur));
  while (cur.try_consume(';')) prog.rules.push_back(parse_rule(cur));
  if (!cur.at_end()) cur.fail("trailing input after the last rule");
  prog.id = print_program(prog);
  require_valid(prog);
  return prog;
}

std::string print_program(const Program& prog) {
  std::ostringstream out;
  for (std::size_t i = 0; i < prog.rules.size(); ++i) {
    const StepRule& r = prog.rules[i];
    if (i) out << "; ";
    out << rule_label(r) << ":";
    if (r.guard == GuardKind::Even) {
      out << "/2";
      continue;
    }
    out << "(" << r.multiplier << "n";
    if (r.denominator != 1) out << "/" << r.denominator;
    out << (r.offset > 0 ? "+" : "-") << "1)/2";
  }
  return out.str();
}

}  // namespace rrmap
