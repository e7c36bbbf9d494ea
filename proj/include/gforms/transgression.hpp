#pragma once
// Simplicial surface models, evaluation maps of mapping spaces into the
// classifying nerve, and the Eilenberg-MacLane pushforward that
// transgresses the classifying 2-form to mapping spaces.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "gforms/cech.hpp"
#include "gforms/form_expr.hpp"
#include "gforms/group_word.hpp"

namespace gforms {

/// A simplex of dimension <= 2 in a simplicial set presented by
/// nondegenerate cells: a nondegenerate cell name plus the degeneracy
/// operators applied to it (outermost first), e.g. {1, "q", {0}} = s0 q.
struct Simplex {
  int dim = 0;
  std::string cell;
  std::vector<int> degens;
  bool operator==(const Simplex&) const = default;
  std::string str() const;
};

/// A simplicial set with cells in dimensions <= 2, one vertex expected
/// for mapping models. Faces of nondegenerate cells are tabulated; faces
/// of degenerate simplices follow the simplicial identities.
struct SimplicialSurface {
  std::string name;
  std::vector<std::string> cells0, cells1, cells2;
  std::map<std::string, std::array<std::string, 2>> faces1;  // d0, d1
  std::map<std::string, std::array<Simplex, 3>> faces2;      // d0, d1, d2

  int top_dim() const { return cells2.empty() ? 1 : 2; }

  /// All k-simplices (nondegenerate and degenerate), k <= 2.
  std::vector<Simplex> simplices(int k) const;

  /// Face d_i of a (possibly degenerate) simplex of dim 1 or 2.
  Simplex face(const Simplex& s, int i) const;

  /// Check the simplicial identities d_i d_j = d_{j-1} d_i (i < j) on
  /// every 2-simplex; throws std::invalid_argument on violation or
  /// missing tables.
  void validate() const;

  static SimplicialSurface circle();
  static SimplicialSurface pants();  // pair of pants: three boundary loops
  static SimplicialSurface wedge_two_circles();
  static SimplicialSurface from_json(const std::string& text);
  std::string to_json() const;
};

/// A presentation of maps from a surface into the classifying nerve of
/// G: a point of the mapping space is a tuple of hom_arity group
/// elements (one per nondegenerate 1-cell); level-n points append n
/// conjugator legs. `ev1` gives, per nondegenerate 1-cell, the
/// evaluation word on hom_arity + 1 coordinates (point..., leg).
struct MappingModel {
  SimplicialSurface surface;
  int hom_arity = 0;
  std::map<std::string, GroupWord> ev1;

  /// Evaluation word of a (possibly degenerate) 1-simplex at level 1.
  GroupWord ev_word1(const Simplex& s) const;

  /// Evaluation words of a 2-simplex at level 2 (hom_arity + 2 coords):
  /// component 1 = ev1(d2 s) composed with the nerve face d2,
  /// component 2 = ev1(d0 s) composed with the nerve face d0.
  std::array<GroupWord, 2> ev_word2(const Simplex& s) const;

  static MappingModel circle();
  static MappingModel pants();
};

/// Eilenberg-MacLane pushforward of the classifying 2-form phi2 (a
/// 2-form on G^2) along the surface:
///   - 2-dimensional surface with a single nondegenerate 2-cell: a
///     2-form on the mapping space itself (level 0);
///   - circle: the level-1 element
///       -(ev of s0 tau composed with section s1)* phi2
///       +(ev of s1 tau composed with section s0)* phi2.
/// Other surface shapes are rejected (std::invalid_argument).
CechElement em_pushforward(const MappingModel& model, const FormExpr& phi2);

/// Punctured-torus 2-form, via the commutator-lift route: pull the
/// associativity-telescope of phi back along (a, b, a^{-1}, b^{-1}).
FormExpr ptorus_commutator_route();

/// Punctured-torus 2-form, via the homotopy-correction route:
/// -(phi pulled along (ab, a^{-1}b^{-1})) minus the homotopy pullback of
/// the boundary transgression representative.
FormExpr ptorus_homotopy_route();

/// The closed 3-term form the two routes must equal:
///   1/2 (a*theta, b*theta-bar) + 1/2 (a*theta-bar, b*theta)
/// + 1/2 ((ab)*theta, (a^{-1}b^{-1})*theta-bar).
FormExpr doublelagr_form();

/// The double 2-form 1/2 (a*theta, b*theta-bar) + 1/2 (a*theta-bar,
/// b*theta), produced mechanically by the homotopy correction.
FormExpr double_form();

/// Circle transgression representative of the quotient 2-form on
/// (base g; leg k):  -1/2 (g*theta + g*theta-bar, k*theta-bar)
///                   +1/2 (Ad_g k*theta-bar, k*theta-bar),
/// with both coordinates given as words on an ambient G^arity.
FormExpr circle_rep(const GroupWord& base, const GroupWord& leg);

}  // namespace gforms
