#include "gforms/group_word.hpp"

#include <stdexcept>

namespace gforms {

GroupWord::GroupWord(int arity, std::vector<Letter> letters)
    : arity_(arity), letters_(std::move(letters)) {
  if (arity_ < 0) throw std::invalid_argument("word arity must be >= 0");
  for (const Letter& l : letters_) {
    if (l.factor < 0 || l.factor >= arity_)
      throw std::invalid_argument("word letter factor out of range");
    if (l.exp != 1 && l.exp != -1)
      throw std::invalid_argument("word letter exponent must be +1 or -1");
  }
}

GroupWord GroupWord::operator*(const GroupWord& o) const {
  if (arity_ != o.arity_)
    throw std::invalid_argument("word product needs equal arities");
  std::vector<Letter> ls = letters_;
  ls.insert(ls.end(), o.letters_.begin(), o.letters_.end());
  return GroupWord(arity_, std::move(ls));
}

GroupWord GroupWord::inverse() const {
  std::vector<Letter> ls;
  ls.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    ls.push_back(Letter{it->factor, -it->exp});
  return GroupWord(arity_, std::move(ls));
}

GroupWord GroupWord::reduced() const {
  std::vector<Letter> out;
  for (const Letter& l : letters_) {
    if (!out.empty() && out.back().factor == l.factor &&
        out.back().exp == -l.exp) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return GroupWord(arity_, std::move(out));
}

GroupWord GroupWord::substitute(const std::vector<GroupWord>& images) const {
  if (static_cast<int>(images.size()) != arity_)
    throw std::invalid_argument("substitute needs one image per coordinate");
  int target = images.empty() ? 0 : images[0].arity();
  for (const GroupWord& w : images)
    if (w.arity() != target)
      throw std::invalid_argument("substitute images must share one arity");
  GroupWord out = GroupWord::identity(target);
  for (const Letter& l : letters_)
    out = out * (l.exp == 1 ? images[l.factor] : images[l.factor].inverse());
  return out.reduced();
}

Eigen::MatrixXd GroupWord::eval(
    const std::vector<Eigen::MatrixXd>& point) const {
  if (static_cast<int>(point.size()) != arity_)
    throw std::invalid_argument("word eval: wrong number of coordinates");
  int n = point.empty() ? 1 : static_cast<int>(point[0].rows());
  Eigen::MatrixXd out = Eigen::MatrixXd::Identity(n, n);
  for (const Letter& l : letters_) {
    if (l.exp == 1)
      out *= point[l.factor];
    else
      out *= point[l.factor].inverse();
  }
  return out;
}

Eigen::MatrixXd GroupWord::dval(const std::vector<Eigen::MatrixXd>& point,
                                int factor, const Eigen::MatrixXd& xi) const {
  // Product rule over the letters; d(g^{-1}) = -g^{-1} xi g^{-1}.
  int n = point.empty() ? static_cast<int>(xi.rows())
                        : static_cast<int>(point[0].rows());
  std::vector<Eigen::MatrixXd> vals;
  vals.reserve(letters_.size());
  for (const Letter& l : letters_)
    vals.push_back(l.exp == 1 ? point[l.factor]
                              : point[l.factor].inverse().eval());
  Eigen::MatrixXd total = Eigen::MatrixXd::Zero(n, n);
  for (size_t i = 0; i < letters_.size(); ++i) {
    if (letters_[i].factor != factor) continue;
    Eigen::MatrixXd d = (letters_[i].exp == 1)
                            ? xi
                            : Eigen::MatrixXd(-vals[i] * xi * vals[i]);
    Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
    for (size_t k = 0; k < i; ++k) term *= vals[k];
    term *= d;
    for (size_t k = i + 1; k < letters_.size(); ++k) term *= vals[k];
    total += term;
  }
  return total;
}

std::string GroupWord::str() const {
  if (letters_.empty()) return "e";
  std::string s;
  for (size_t i = 0; i < letters_.size(); ++i) {
    if (i) s += " ";
    s += "g" + std::to_string(letters_[i].factor);
    if (letters_[i].exp == -1) s += "^-1";
  }
  return s;
}

WordMap compose_map(const WordMap& outer, const WordMap& inner) {
  WordMap out;
  out.reserve(outer.size());
  for (const GroupWord& w : outer) out.push_back(w.substitute(inner));
  return out;
}

WordMap identity_map(int arity) {
  WordMap out;
  out.reserve(arity);
  for (int i = 0; i < arity; ++i) out.push_back(GroupWord::generator(arity, i));
  return out;
}

}  // namespace gforms
