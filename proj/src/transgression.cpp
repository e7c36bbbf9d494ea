#include "gforms/transgression.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include <nlohmann/json.hpp>

#include "gforms/rational.hpp"

namespace gforms {

namespace {

/// Canonical descending order of degeneracy operators: s_i s_j = s_{j+1} s_i
/// for i <= j, so every composite sorts to strictly decreasing indices.
std::vector<int> push_degeneracy(int k, std::vector<int> degens) {
  std::vector<int> out;
  out.reserve(degens.size() + 1);
  std::size_t p = 0;
  while (p < degens.size() && k <= degens[p]) {
    out.push_back(degens[p] + 1);
    ++p;
  }
  out.push_back(k);
  for (; p < degens.size(); ++p) out.push_back(degens[p]);
  return out;
}

Simplex apply_degeneracy(int k, const Simplex& s) {
  return Simplex{s.dim + 1, s.cell, push_degeneracy(k, s.degens)};
}

}  // namespace

std::string Simplex::str() const {
  std::string out;
  for (int d : degens) out += "s" + std::to_string(d) + " ";
  return out + cell;
}

std::vector<Simplex> SimplicialSurface::simplices(int k) const {
  std::vector<Simplex> out;
  if (k == 0) {
    for (const std::string& c : cells0) out.push_back({0, c, {}});
    return out;
  }
  if (k == 1) {
    for (const std::string& c : cells1) out.push_back({1, c, {}});
    for (const std::string& c : cells0) out.push_back({1, c, {0}});
    return out;
  }
  if (k == 2) {
    for (const std::string& c : cells2) out.push_back({2, c, {}});
    for (const std::string& c : cells1) {
      out.push_back({2, c, {0}});
      out.push_back({2, c, {1}});
    }
    for (const std::string& c : cells0) out.push_back({2, c, {1, 0}});
    return out;
  }
  throw std::invalid_argument("simplices: dimension out of range");
}

Simplex SimplicialSurface::face(const Simplex& s, int i) const {
  if (i < 0 || i > s.dim)
    throw std::invalid_argument("face: index out of range");
  if (s.degens.empty()) {
    if (s.dim == 1) {
      auto it = faces1.find(s.cell);
      if (it == faces1.end())
        throw std::invalid_argument("face: missing 1-cell table for " +
                                    s.cell);
      return {0, it->second[i], {}};
    }
    if (s.dim == 2) {
      auto it = faces2.find(s.cell);
      if (it == faces2.end())
        throw std::invalid_argument("face: missing 2-cell table for " +
                                    s.cell);
      return it->second[i];
    }
    throw std::invalid_argument("face: 0-simplices have no faces");
  }
  // Peel the outermost degeneracy s_j and use d_i s_j identities.
  int j = s.degens.front();
  Simplex rest{s.dim - 1, s.cell,
               std::vector<int>(s.degens.begin() + 1, s.degens.end())};
  if (i == j || i == j + 1) return rest;
  if (i < j) return apply_degeneracy(j - 1, face(rest, i));
  return apply_degeneracy(j, face(rest, i - 1));
}

void SimplicialSurface::validate() const {
  if (cells0.empty())
    throw std::invalid_argument("surface: needs at least one vertex");
  auto known0 = [&](const std::string& c) {
    return std::find(cells0.begin(), cells0.end(), c) != cells0.end();
  };
  for (const std::string& c : cells1) {
    auto it = faces1.find(c);
    if (it == faces1.end())
      throw std::invalid_argument("surface: missing faces of 1-cell " + c);
    for (const std::string& v : it->second)
      if (!known0(v))
        throw std::invalid_argument("surface: unknown vertex " + v);
  }
  auto known1 = [&](const Simplex& s) {
    if (s.dim != 1) return false;
    if (s.degens.empty())
      return std::find(cells1.begin(), cells1.end(), s.cell) != cells1.end();
    return s.degens == std::vector<int>{0} && known0(s.cell);
  };
  for (const std::string& c : cells2) {
    auto it = faces2.find(c);
    if (it == faces2.end())
      throw std::invalid_argument("surface: missing faces of 2-cell " + c);
    for (const Simplex& f : it->second)
      if (!known1(f))
        throw std::invalid_argument("surface: bad face of 2-cell " + c +
                                    ": " + f.str());
  }
  // d_i d_j = d_{j-1} d_i for i < j on every 2-simplex.
  for (const Simplex& s : simplices(2)) {
    for (int j = 1; j <= 2; ++j)
      for (int i = 0; i < j; ++i) {
        Simplex lhs = face(face(s, j), i);
        Simplex rhs = face(face(s, i), j - 1);
        if (!(lhs == rhs))
          throw std::invalid_argument(
              "surface: simplicial identity d" + std::to_string(i) + " d" +
              std::to_string(j) + " fails on " + s.str());
      }
  }
}

SimplicialSurface SimplicialSurface::circle() {
  SimplicialSurface s;
  s.name = "circle";
  s.cells0 = {"q"};
  s.cells1 = {"tau"};
  s.faces1["tau"] = {"q", "q"};
  return s;
}

SimplicialSurface SimplicialSurface::pants() {
  SimplicialSurface s;
  s.name = "pants";
  s.cells0 = {"q"};
  s.cells1 = {"tau0", "tau1", "tau2"};
  for (const std::string& c : s.cells1) s.faces1[c] = {"q", "q"};
  s.cells2 = {"M"};
  s.faces2["M"] = {Simplex{1, "tau0", {}}, Simplex{1, "tau1", {}},
                   Simplex{1, "tau2", {}}};
  return s;
}

SimplicialSurface SimplicialSurface::wedge_two_circles() {
  SimplicialSurface s;
  s.name = "wedge_two_circles";
  s.cells0 = {"q"};
  s.cells1 = {"tau0", "tau1"};
  for (const std::string& c : s.cells1) s.faces1[c] = {"q", "q"};
  return s;
}

namespace {

nlohmann::ordered_json simplex_json(const Simplex& s) {
  return {{"dim", s.dim}, {"cell", s.cell}, {"degens", s.degens}};
}

Simplex simplex_from_json(const nlohmann::json& j) {
  Simplex s;
  s.dim = j.at("dim").get<int>();
  s.cell = j.at("cell").get<std::string>();
  s.degens = j.at("degens").get<std::vector<int>>();
  return s;
}

}  // namespace

std::string SimplicialSurface::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["cells0"] = cells0;
  j["cells1"] = cells1;
  j["cells2"] = cells2;
  nlohmann::ordered_json f1 = nlohmann::ordered_json::object();
  for (const auto& [c, fs] : faces1) f1[c] = {fs[0], fs[1]};
  j["faces1"] = f1;
  nlohmann::ordered_json f2 = nlohmann::ordered_json::object();
  for (const auto& [c, fs] : faces2)
    f2[c] = {simplex_json(fs[0]), simplex_json(fs[1]), simplex_json(fs[2])};
  j["faces2"] = f2;
  return j.dump(2);
}

SimplicialSurface SimplicialSurface::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  SimplicialSurface s;
  s.name = j.at("name").get<std::string>();
  s.cells0 = j.at("cells0").get<std::vector<std::string>>();
  s.cells1 = j.at("cells1").get<std::vector<std::string>>();
  s.cells2 = j.at("cells2").get<std::vector<std::string>>();
  for (const auto& [c, fs] : j.at("faces1").items())
    s.faces1[c] = {fs.at(0).get<std::string>(), fs.at(1).get<std::string>()};
  for (const auto& [c, fs] : j.at("faces2").items())
    s.faces2[c] = {simplex_from_json(fs.at(0)), simplex_from_json(fs.at(1)),
                   simplex_from_json(fs.at(2))};
  s.validate();
  return s;
}

GroupWord MappingModel::ev_word1(const Simplex& s) const {
  if (s.dim != 1) throw std::invalid_argument("ev_word1: wants a 1-simplex");
  const int coords = hom_arity + 1;
  if (!s.degens.empty()) return GroupWord::generator(coords, hom_arity);
  auto it = ev1.find(s.cell);
  if (it == ev1.end())
    throw std::invalid_argument("ev_word1: unknown 1-cell " + s.cell);
  return it->second;
}

std::array<GroupWord, 2> MappingModel::ev_word2(const Simplex& s) const {
  if (s.dim != 2) throw std::invalid_argument("ev_word2: wants a 2-simplex");
  const int coords = hom_arity + 2;
  // First component: evaluate d2(s) along the first conjugator leg.
  std::vector<GroupWord> first_leg;
  for (int j = 0; j < hom_arity; ++j)
    first_leg.push_back(GroupWord::generator(coords, j));
  first_leg.push_back(GroupWord::generator(coords, hom_arity));
  GroupWord comp1 = ev_word1(surface.face(s, 2)).substitute(first_leg);
  // Second component: conjugate the marking by the first leg, then
  // evaluate d0(s) along the second leg.
  std::vector<GroupWord> second_leg;
  for (int j = 0; j < hom_arity; ++j)
    second_leg.push_back(GroupWord(
        coords, {{hom_arity, -1}, {j, 1}, {hom_arity, 1}}));
  second_leg.push_back(GroupWord::generator(coords, hom_arity + 1));
  GroupWord comp2 = ev_word1(surface.face(s, 0)).substitute(second_leg);
  return {comp1, comp2};
}

MappingModel MappingModel::circle() {
  MappingModel m;
  m.surface = SimplicialSurface::circle();
  m.hom_arity = 1;
  m.ev1.emplace("tau", GroupWord(2, {{0, 1}, {1, 1}}));
  return m;
}

MappingModel MappingModel::pants() {
  MappingModel m;
  m.surface = SimplicialSurface::pants();
  m.hom_arity = 2;
  m.ev1.emplace("tau0", GroupWord(3, {{1, 1}, {2, 1}}));
  m.ev1.emplace("tau1", GroupWord(3, {{0, 1}, {1, 1}, {2, 1}}));
  m.ev1.emplace("tau2", GroupWord(3, {{0, 1}, {2, 1}}));
  return m;
}

CechElement em_pushforward(const MappingModel& model, const FormExpr& phi2) {
  if (phi2.arity() != 2 || phi2.degree() != 2 ||
      phi2.valued() != Valued::scalar)
    throw std::invalid_argument(
        "em_pushforward: wants a scalar 2-form on two group factors");
  const SimplicialSurface& surf = model.surface;
  const int h = model.hom_arity;
  if (surf.top_dim() == 2) {
    if (surf.cells2.size() != 1)
      throw std::invalid_argument(
          "em_pushforward: unsupported surface shape (" + surf.name + ")");
    // Both degeneracy sections set the legs to the identity; the
    // pushforward is the plain pullback along the 2-cell evaluation.
    Simplex top{2, surf.cells2.front(), {}};
    auto comps = model.ev_word2(top);
    std::vector<GroupWord> drop_legs;
    for (int j = 0; j < h; ++j)
      drop_legs.push_back(GroupWord::generator(h, j));
    drop_legs.push_back(GroupWord::identity(h));
    drop_legs.push_back(GroupWord::identity(h));
    WordMap words = {comps[0].substitute(drop_legs),
                     comps[1].substitute(drop_legs)};
    return {h, 0, pullback(phi2, words)};
  }
  if (surf.cells1.size() != 1)
    throw std::invalid_argument("em_pushforward: unsupported surface shape (" +
                                surf.name + ")");
  const std::string& tau = surf.cells1.front();
  // Sections s1 (leg, identity) and s0 (identity, leg) of the level-2
  // coordinates; the pushforward is -s1* ev_{s0 tau}* phi + s0* ev_{s1 tau}* phi.
  const int coords = h + 1;
  std::vector<GroupWord> s1_images, s0_images;
  for (int j = 0; j < h; ++j) {
    s1_images.push_back(GroupWord::generator(coords, j));
    s0_images.push_back(GroupWord::generator(coords, j));
  }
  s1_images.push_back(GroupWord::generator(coords, h));
  s1_images.push_back(GroupWord::identity(coords));
  s0_images.push_back(GroupWord::identity(coords));
  s0_images.push_back(GroupWord::generator(coords, h));
  auto ev_s0 = model.ev_word2(Simplex{2, tau, {0}});
  auto ev_s1 = model.ev_word2(Simplex{2, tau, {1}});
  WordMap w0 = {ev_s0[0].substitute(s1_images), ev_s0[1].substitute(s1_images)};
  WordMap w1 = {ev_s1[0].substitute(s0_images), ev_s1[1].substitute(s0_images)};
  return {h, 1, pullback(phi2, w1) - pullback(phi2, w0)};
}

namespace {

/// Shared homotopy-correction machinery on the level-1 coordinates
/// (k1, k2, x1, x2): the corrected summands of the boundary
/// transgression representative, and the homotopy substitution word.
struct HomotopyData {
  FormExpr summands;  // S2 + S3 on G^4
  WordMap hbar;       // (a, b) -> (e, b^{-1}, ab, b^{-1}a^{-1})
};

HomotopyData homotopy_data() {
  GroupWord k1 = GroupWord::generator(4, 0);
  GroupWord k2 = GroupWord::generator(4, 1);
  GroupWord x1 = GroupWord::generator(4, 2);
  GroupWord x2 = GroupWord::generator(4, 3);
  FormExpr s2 = rat(1, 2) * FormExpr::pair(
      pull_lmc(x1) + pull_rmc(x1) + FormExpr::ad(x1, pull_rmc(k1)),
      pull_rmc(k1));
  FormExpr s3 = rat(1, 2) * FormExpr::pair(
      pull_lmc(x2) + pull_rmc(x2) - FormExpr::ad(x2, pull_rmc(k2)),
      pull_rmc(k2));
  WordMap hbar = {GroupWord::identity(2), GroupWord(2, {{1, -1}}),
                  GroupWord(2, {{0, 1}, {1, 1}}),
                  GroupWord(2, {{1, -1}, {0, -1}})};
  return {s2 + s3, hbar};
}

}  // namespace

FormExpr ptorus_commutator_route() {
  GroupWord a = GroupWord::generator(2, 0);
  GroupWord b = GroupWord::generator(2, 1);
  GroupWord ai = a.inverse(), bi = b.inverse();
  FormExpr phi = phi_form();
  auto pull = [&](const GroupWord& u, const GroupWord& v) {
    return pullback(phi, WordMap{u, v});
  };
  return -pull(a * b, ai * bi) - pull(ai, bi) - pull(a, b) + pull(a, ai) +
         pull(b, bi);
}

FormExpr ptorus_homotopy_route() {
  GroupWord a = GroupWord::generator(2, 0);
  GroupWord b = GroupWord::generator(2, 1);
  FormExpr glue = pullback(-phi_form(),
                           WordMap{a * b, a.inverse() * b.inverse()});
  HomotopyData h = homotopy_data();
  return glue + pullback(h.summands, h.hbar);
}

FormExpr doublelagr_form() {
  GroupWord a = GroupWord::generator(2, 0);
  GroupWord b = GroupWord::generator(2, 1);
  FormExpr t1 = FormExpr::pair(FormExpr::lmc(2, 0), FormExpr::rmc(2, 1));
  FormExpr t2 = FormExpr::pair(FormExpr::rmc(2, 0), FormExpr::lmc(2, 1));
  FormExpr t3 = FormExpr::pair(pull_lmc(a * b),
                               pull_rmc(a.inverse() * b.inverse()));
  return rat(1, 2) * t1 + rat(1, 2) * t2 + rat(1, 2) * t3;
}

FormExpr double_form() {
  HomotopyData h = homotopy_data();
  return pullback(h.summands, h.hbar);
}

FormExpr circle_rep(const GroupWord& base, const GroupWord& leg) {
  FormExpr leg_rmc = pull_rmc(leg);
  FormExpr head = FormExpr::pair(pull_lmc(base) + pull_rmc(base), leg_rmc);
  FormExpr tail = FormExpr::pair(FormExpr::ad(base, leg_rmc), leg_rmc);
  return rat(-1, 2) * head + rat(1, 2) * tail;
}

}  // namespace gforms
