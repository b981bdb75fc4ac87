#include "packbound/dff.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace packbound {

struct Dff::Node {
  Kind kind = Kind::kIdentity;
  std::int64_t k = 0;
  Rational eps;
  // Precomputed floor(1/eps) for phi.
  Rational inv_floor;
  std::vector<Dff> children;  // compose: {outer, inner}
  std::vector<Rational> weights;
  std::string text;
};

namespace {

const Rational kHalf(1, 2);

}  // namespace

Dff Dff::identity() {
  static const Dff id = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::kIdentity;
    n->text = "id";
    return Dff(std::move(n));
  }();
  return id;
}

Dff Dff::ustep(std::int64_t k) {
  if (k < 1) throw std::invalid_argument("u(k) requires k >= 1");
  auto n = std::make_shared<Node>();
  n->kind = Kind::kUStep;
  n->k = k;
  n->text = "u(" + std::to_string(k) + ")";
  return Dff(std::move(n));
}

Dff Dff::threshold(const Rational& eps) {
  if (eps > kHalf) throw std::invalid_argument("U(eps) requires eps <= 1/2");
  auto n = std::make_shared<Node>();
  n->kind = Kind::kThreshold;
  n->eps = eps;
  n->text = "U(" + eps.str() + ")";
  return Dff(std::move(n));
}

Dff Dff::phi(const Rational& eps) {
  if (eps.is_zero() || eps > kHalf) {
    throw std::invalid_argument("phi(eps) requires 0 < eps <= 1/2");
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::kPhiStep;
  n->eps = eps;
  n->inv_floor = floor(Rational(1) / eps);
  n->text = "phi(" + eps.str() + ")";
  return Dff(std::move(n));
}

Dff Dff::compose(Dff outer, Dff inner) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kCompose;
  n->text = "compose(" + outer.str() + "," + inner.str() + ")";
  n->children = {std::move(outer), std::move(inner)};
  return Dff(std::move(n));
}

Dff Dff::convex(std::vector<Term> terms) {
  if (terms.empty()) throw std::invalid_argument("convex() needs a term");
  Rational sum;
  auto n = std::make_shared<Node>();
  n->kind = Kind::kConvex;
  n->text = "convex(";
  for (std::size_t i = 0; i < terms.size(); ++i) {
    sum += terms[i].weight;
    if (i) n->text += "+";
    n->text += terms[i].weight.str() + "*" + terms[i].f.str();
    n->weights.push_back(terms[i].weight);
    n->children.push_back(std::move(terms[i].f));
  }
  n->text += ")";
  if (sum != Rational(1)) {
    throw std::invalid_argument("convex weights sum to " + sum.str() +
                                ", expected 1");
  }
  return Dff(std::move(n));
}

Dff::Kind Dff::kind() const { return node_->kind; }

std::string Dff::str() const { return node_->text; }

Rational Dff::operator()(const Rational& x) const {
  if (x > Rational(1)) {
    throw std::domain_error("dff argument " + x.str() + " outside [0,1]");
  }
  return eval_unchecked(x);
}

Rational Dff::eval_unchecked(const Rational& x) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::kIdentity:
      return x;
    case Kind::kUStep: {
      const Rational scaled = Rational(n.k + 1) * x;
      if (scaled.is_integer()) return x;
      return floor(scaled) / Rational(n.k);
    }
    case Kind::kThreshold:
      if (x < n.eps) return Rational(0);
      if (x + n.eps > Rational(1)) return Rational(1);
      return x;
    case Kind::kPhiStep:
      if (x < n.eps) return Rational(0);
      if (x <= kHalf) return Rational(1) / n.inv_floor;
      return Rational(1) -
             floor((Rational(1) - x) / n.eps) / n.inv_floor;
    case Kind::kCompose:
      return n.children[0].eval_unchecked(n.children[1].eval_unchecked(x));
    case Kind::kConvex: {
      Rational sum;
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        sum += n.weights[i] * n.children[i].eval_unchecked(x);
      }
      return sum;
    }
  }
  return x;
}

namespace {

class DffParser {
 public:
  explicit DffParser(std::string_view text) : text_(text) {}

  Dff parse_all() {
    Dff f = parse_dff();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("bad dff '" + std::string(text_) + "' at " +
                                std::to_string(pos_) + ": " + why);
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  std::string name() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  Rational rational() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '/')) {
      ++pos_;
    }
    return Rational::parse(text_.substr(start, pos_ - start));
  }

  Dff parse_dff() {
    const std::string head = name();
    if (head == "id") return Dff::identity();
    if (head == "u") {
      expect('(');
      const Rational k = rational();
      expect(')');
      if (!k.is_integer()) fail("u(k) needs an integer");
      return Dff::ustep(k.to_int64());
    }
    if (head == "U" || head == "phi") {
      expect('(');
      const Rational eps = rational();
      expect(')');
      return head == "U" ? Dff::threshold(eps) : Dff::phi(eps);
    }
    if (head == "compose") {
      expect('(');
      Dff outer = parse_dff();
      expect(',');
      Dff inner = parse_dff();
      expect(')');
      return Dff::compose(std::move(outer), std::move(inner));
    }
    if (head == "convex") {
      expect('(');
      std::vector<Dff::Term> terms;
      do {
        const Rational w = rational();
        expect('*');
        terms.push_back({w, parse_dff()});
      } while (peek('+') && (++pos_, true));
      expect(')');
      return Dff::convex(std::move(terms));
    }
    fail("unknown function '" + head + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Dff Dff::parse(std::string_view text) { return DffParser(text).parse_all(); }

std::vector<Rational> candidate_params(const NormalizedInstance& inst,
                                       std::size_t dim) {
  std::vector<Rational> out;
  for (const Box& b : inst.boxes) {
    const Rational& w = b.size.at(dim);
    if (w.is_zero()) continue;
    if (w <= kHalf) {
      out.push_back(w);
    } else if (w < Rational(1)) {
      out.push_back(Rational(1) - w);
    }
  }
  for (std::size_t t = 2; t <= inst.boxes.size(); ++t) {
    out.push_back(Rational(1, static_cast<long long>(t)));
  }
  out.push_back(kHalf);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace packbound
