#include "quadrank/poly.hpp"

#include <cctype>
#include <charconv>

namespace quadrank {

std::vector<Exponents> monomials_of_degree(std::size_t n, unsigned e) {
  std::vector<Exponents> out;
  if (n == 0) {
    if (e == 0) out.emplace_back();
    return out;
  }
  Exponents cur(n, 0);
  // Lexicographically descending: the first slot takes as much as it can.
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i + 1 == n) {
      cur[i] = static_cast<std::uint16_t>(left);
      out.push_back(cur);
      return;
    }
    for (unsigned k = left + 1; k-- > 0;) {
      cur[i] = static_cast<std::uint16_t>(k);
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, e);
  return out;
}

std::vector<std::string> default_variable_names(std::size_t arity, std::string_view prefix) {
  std::vector<std::string> names;
  names.reserve(arity);
  for (std::size_t i = 0; i < arity; ++i) names.push_back(std::string(prefix) + std::to_string(i));
  return names;
}

namespace detail {

namespace {

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip();
    return pos_ >= s_.size();
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  std::optional<long> number() {
    skip();
    long v = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (ec != std::errc()) return std::nullopt;
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    return v;
  }
  std::optional<std::string_view> identifier() {
    skip();
    const std::size_t start = pos_;
    if (pos_ >= s_.size() || !(std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      return std::nullopt;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    return s_.substr(start, pos_ - start);
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<ParsedTerm> parse_terms(std::string_view text, const std::vector<std::string>& names) {
  Lexer lx(text);
  std::vector<ParsedTerm> out;
  if (lx.done()) lx.fail("empty polynomial");
  bool first = true;
  while (!lx.done()) {
    ParsedTerm t;
    t.exps.assign(names.size(), 0);
    if (lx.accept('-')) t.negative = true;
    else if (!lx.accept('+') && !first) lx.fail("expected + or -");
    first = false;

    bool expect_factor = true;
    bool any = false;
    while (expect_factor) {
      const char c = lx.peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        const auto n = lx.number();
        if (!n) lx.fail("bad number");
        t.num *= *n;
        if (lx.accept('/')) {
          const auto d = lx.number();
          if (!d || *d == 0) lx.fail("bad denominator");
          t.den *= *d;
        }
      } else if (auto id = lx.identifier()) {
        std::size_t var = names.size();
        for (std::size_t i = 0; i < names.size(); ++i)
          if (names[i] == *id) var = i;
        if (var == names.size()) lx.fail("unknown variable '" + std::string(*id) + "'");
        long e = 1;
        if (lx.accept('^')) {
          const auto n = lx.number();
          if (!n || *n < 0) lx.fail("bad exponent");
          e = *n;
        }
        t.exps[var] = static_cast<std::uint16_t>(t.exps[var] + e);
      } else {
        lx.fail("expected coefficient or variable");
      }
      any = true;
      expect_factor = lx.accept('*');
    }
    if (!any) lx.fail("empty term");
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace detail

}  // namespace quadrank
