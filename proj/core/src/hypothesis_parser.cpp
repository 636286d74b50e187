#include <cctype>
#include <charconv>
#include <string>
#include <vector>

#include "dpdlogit/hypothesis.hpp"

namespace dpdlogit {
namespace {

class ConstraintParser {
 public:
  ConstraintParser(const std::string& text, Eigen::Index dim) : s_(text), dim_(dim) {}

  LinearHypothesis parse() {
    std::vector<Vector> rows;
    std::vector<double> rhs;
    skip_space();
    if (at_end()) fail("empty hypothesis");
    for (;;) {
      const std::size_t start = pos_;
      Vector coef = Vector::Zero(dim_);
      double constant = 0.0;
      side(coef, constant, 1.0);
      expect('=');
      side(coef, constant, -1.0);
      if (coef.isZero(0.0)) {
        fail("constraint " + std::to_string(rows.size() + 1) +
                 " does not involve any coefficient",
             start);
      }
      rows.push_back(coef);
      rhs.push_back(-constant);
      skip_space();
      if (at_end()) break;
      expect(',');
    }
    Matrix m(dim_, static_cast<Eigen::Index>(rows.size()));
    Vector v(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t j = 0; j < rows.size(); ++j) {
      m.col(static_cast<Eigen::Index>(j)) = rows[j];
      v(static_cast<Eigen::Index>(j)) = rhs[j];
    }
    return LinearHypothesis(std::move(m), std::move(v));
  }

 private:
  // Accumulates sign * (one side of an equation) into coef and constant.
  void side(Vector& coef, double& constant, double sign) {
    skip_space();
    bool first = true;
    for (;;) {
      double term_sign = 1.0;
      skip_space();
      if (peek() == '+' || peek() == '-') {
        term_sign = get() == '-' ? -1.0 : 1.0;
      } else if (!first) {
        return;
      }
      first = false;
      skip_space();
      double value = 1.0;
      bool has_number = false;
      if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
        value = rational();
        has_number = true;
        skip_space();
        if (peek() == '*') {
          get();
          skip_space();
          if (peek() != 'b') fail("expected a coefficient name after '*'");
        }
      }
      if (peek() == 'b') {
        const Eigen::Index idx = variable();
        coef(idx) += sign * term_sign * value;
      } else if (has_number) {
        constant += sign * term_sign * value;
      } else {
        fail("expected a number or a coefficient name b0..b" +
             std::to_string(dim_ - 1));
      }
      skip_space();
    }
  }

  double rational() {
    double num = number();
    skip_space();
    if (peek() == '/') {
      get();
      skip_space();
      const std::size_t at = pos_;
      const double den = number();
      if (den == 0.0) fail("division by zero", at);
      num /= den;
    }
    return num;
  }

  double number() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') ++pos_;
    if (peek() == 'e' || peek() == 'E') {
      ++pos_;
      if (peek() == '+' || peek() == '-') ++pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    double out = 0.0;
    const auto res = std::from_chars(s_.data() + start, s_.data() + pos_, out);
    if (res.ec != std::errc() || res.ptr != s_.data() + pos_) {
      fail("malformed number", start);
    }
    return out;
  }

  Eigen::Index variable() {
    const std::size_t start = pos_;
    get();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) {
      fail("expected a coefficient index after 'b'", start);
    }
    long idx = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      idx = idx * 10 + (get() - '0');
      if (idx > 1000000) break;
    }
    if (idx >= dim_) {
      fail("b" + std::to_string(idx) + " is out of range: the model has b0..b" +
               std::to_string(dim_ - 1),
           start);
    }
    return static_cast<Eigen::Index>(idx);
  }

  void expect(char c) {
    skip_space();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    get();
  }

  void skip_space() {
    while (std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }
  char get() { return s_[pos_++]; }

  [[noreturn]] void fail(const std::string& what) const { fail(what, pos_); }
  [[noreturn]] void fail(const std::string& what, std::size_t at) const {
    throw ParseError("hypothesis: " + what, 1, at + 1);
  }

  const std::string& s_;
  Eigen::Index dim_;
  std::size_t pos_ = 0;
};

}  // namespace

LinearHypothesis LinearHypothesis::parse(const std::string& text, Eigen::Index dim) {
  if (dim < 1) throw InvalidArgument("hypothesis dimension must be >= 1");
  return ConstraintParser(text, dim).parse();
}

}  // namespace dpdlogit
