#include "bt/concave.hpp"

#include <stdexcept>

namespace bt {

RTilde RTilde::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s.push_back(c);
  if (s == "inf" || s == "+inf" || s == "infinity") return infinity();
  bool plus = false;
  if (!s.empty() && s.back() == '+') {
    plus = true;
    s.pop_back();
  }
  return RTilde(parse_rational(s), plus);
}

const Rational& RTilde::value() const {
  if (inf_) throw std::domain_error("real part of infinity");
  return value_;
}

RTilde RTilde::with_plus() const {
  if (inf_) return *this;
  return RTilde(value_, true);
}

RTilde operator+(const RTilde& a, const RTilde& b) {
  if (a.inf_ || b.inf_) return RTilde::infinity();
  return RTilde(a.value_ + b.value_, a.plus_ || b.plus_);
}

bool operator==(const RTilde& a, const RTilde& b) {
  if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
  return a.value_ == b.value_ && a.plus_ == b.plus_;
}

bool operator<(const RTilde& a, const RTilde& b) {
  if (a.inf_) return false;
  if (b.inf_) return true;
  if (a.value_ != b.value_) return a.value_ < b.value_;
  return !a.plus_ && b.plus_;
}

bool RTilde::admits(const Rational& q) const {
  if (inf_) return false;
  return plus_ ? q > value_ : q >= value_;
}

std::string RTilde::str() const {
  if (inf_) return "inf";
  return value_.get_str() + (plus_ ? "+" : "");
}

ConcaveFn::ConcaveFn(FormPtr form, std::vector<RTilde> root_values, RTilde at_zero)
    : form_(std::move(form)), values_(std::move(root_values)), zero_(at_zero) {
  if (!form_) throw std::invalid_argument("concave function without a root system");
  if (values_.size() != form_->roots().size()) throw std::invalid_argument("missing value for some root");
}

const RTilde& ConcaveFn::at(const RootVec& r) const {
  if (is_zero(r)) return zero_;
  auto k = form_->index_of(r);
  if (!k) throw std::invalid_argument("not a root");
  return values_[*k];
}

bool ConcaveFn::pointwise_le(const ConcaveFn& other) const {
  if (!(zero_ <= other.zero_)) return false;
  for (std::size_t k = 0; k < values_.size(); ++k)
    if (!(values_[k] <= other.values_[k])) return false;
  return true;
}

bool is_concave(const RelativeForm& form, const std::vector<RTilde>& root_values, const RTilde& at_zero) {
  if (root_values.size() != form.roots().size()) throw std::invalid_argument("missing value for some root");
  // Phi-hat = Phi u {0}; index n stands for 0.
  std::size_t n = form.roots().size();
  auto vec = [&](std::size_t k) { return k == n ? RootVec(form.rank(), 0) : form.roots()[k]; };
  auto val = [&](std::size_t k) -> const RTilde& { return k == n ? at_zero : root_values[k]; };
  auto find = [&](const RootVec& r) -> std::optional<std::size_t> {
    if (is_zero(r)) return n;
    return form.index_of(r);
  };
  for (std::size_t a = 0; a <= n; ++a) {
    for (std::size_t b = 0; b <= n; ++b) {
      auto s = find(vec(a) + vec(b));
      if (!s) continue;
      if (!(val(*s) <= val(a) + val(b))) return false;
    }
  }
  return true;
}

bool is_concave(const ConcaveFn& f) { return is_concave(*f.form(), f.values(), f.at_zero()); }

ConcaveFn f_plus(const ConcaveFn& f) {
  const RTilde zero(0);
  std::vector<RTilde> out = f.values();
  const auto& form = *f.form();
  for (std::size_t k = 0; k < out.size(); ++k)
    if (f[k] + f[form.negative_of(k)] == zero) out[k] = f[k].with_plus();
  RTilde z = f.at_zero() + f.at_zero() == zero ? f.at_zero().with_plus() : f.at_zero();
  return ConcaveFn(f.form(), out, z);
}

ConcaveFn standard_concave(const FormPtr& form, ConcaveKind kind, const Rational& r,
                           const std::map<std::string, RTilde>& custom) {
  std::size_t n = form->roots().size();
  switch (kind) {
    case ConcaveKind::zero:
      return ConcaveFn(form, std::vector<RTilde>(n, RTilde(0)), RTilde(0));
    case ConcaveKind::moy_prasad: {
      if (r < 0) throw std::invalid_argument("Moy-Prasad level must be >= 0");
      return ConcaveFn(form, std::vector<RTilde>(n, RTilde(r)), RTilde(r));
    }
    case ConcaveKind::custom:
      break;
  }
  std::vector<RTilde> vals(n);
  std::vector<bool> have(n, false);
  std::optional<RTilde> zero;
  for (const auto& [name, v] : custom) {
    if (name == "0") {
      zero = v;
      continue;
    }
    auto k = form->parse_root_name(name);
    if (!k) throw std::invalid_argument("unknown root name: " + name);
    vals[*k] = v;
    have[*k] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    if (!have[k]) throw std::invalid_argument("missing value for root " + form->root_name(form->roots()[k]));
  if (!zero) throw std::invalid_argument("missing value at 0");
  if (!is_concave(*form, vals, *zero)) throw std::invalid_argument("values are not concave");
  return ConcaveFn(form, vals, *zero);
}

}  // namespace bt
