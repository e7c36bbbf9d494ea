#pragma once
// Words in the coordinates of a product group G^arity and their
// elementary calculus: evaluation, inversion, substitution (composition
// of product-group maps), and directional derivatives.

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace gforms {

/// One letter g_factor^{exp} with exp in {+1, -1}.
struct Letter {
  int factor;
  int exp;
  bool operator==(const Letter&) const = default;
};

/// A word in the coordinates of G^arity; the empty word is the constant
/// identity map. A word describes one coordinate of a map G^arity -> G.
class GroupWord {
 public:
  GroupWord(int arity, std::vector<Letter> letters);

  static GroupWord identity(int arity) { return GroupWord(arity, {}); }
  static GroupWord generator(int arity, int factor) {
    return GroupWord(arity, {Letter{factor, +1}});
  }

  int arity() const { return arity_; }
  const std::vector<Letter>& letters() const { return letters_; }
  bool is_identity() const { return letters_.empty(); }

  /// Concatenation (pointwise product of the two coordinate maps).
  GroupWord operator*(const GroupWord& o) const;

  GroupWord inverse() const;

  /// Free reduction: cancel adjacent letters g g^{-1}.
  GroupWord reduced() const;

  /// Compose through a map: each letter's factor is replaced by
  /// images[factor] (inverted for exponent -1). All images must share one
  /// arity, which becomes the result's arity.
  GroupWord substitute(const std::vector<GroupWord>& images) const;

  Eigen::MatrixXd eval(const std::vector<Eigen::MatrixXd>& point) const;

  /// Derivative of the word map at `point` along the tangent that has
  /// ambient block `xi` on coordinate `factor` and zero elsewhere.
  Eigen::MatrixXd dval(const std::vector<Eigen::MatrixXd>& point, int factor,
                       const Eigen::MatrixXd& xi) const;

  /// e.g. "g0 g1^-1"; the empty word prints "e".
  std::string str() const;

  bool operator==(const GroupWord& o) const {
    return arity_ == o.arity_ && letters_ == o.letters_;
  }

 private:
  int arity_;
  std::vector<Letter> letters_;
};

/// A map G^a -> G^b as b coordinate words on a inputs.
using WordMap = std::vector<GroupWord>;

/// Compose maps: first `inner`: G^a -> G^b, then `outer`: G^b -> G^c.
WordMap compose_map(const WordMap& outer, const WordMap& inner);

/// The identity map of G^a.
WordMap identity_map(int arity);

}  // namespace gforms
