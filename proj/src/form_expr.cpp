#include "gforms/form_expr.hpp"

#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace gforms {

struct FormExpr::Node {
  Kind kind;
  int arity;
  int degree;
  Valued valued;
  int factor = -1;
  std::optional<GroupWord> word;
  std::vector<FormExpr> kids;                          // ad/pair/bracket/wedge
  std::vector<std::pair<Rational, FormExpr>> sum_terms;  // sum
  Eigen::MatrixXd mat;
  std::string name;
};

namespace {

using Node = FormExpr::Node;

std::shared_ptr<const Node> make_node(Node n) {
  return std::make_shared<const Node>(std::move(n));
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

Kind FormExpr::kind() const { return node_->kind; }
int FormExpr::arity() const { return node_->arity; }
int FormExpr::degree() const { return node_->degree; }
Valued FormExpr::valued() const { return node_->valued; }

FormExpr FormExpr::zero(int arity, int degree, Valued v) {
  require(arity >= 0 && degree >= 0, "zero: bad shape");
  Node n{Kind::zero, arity, degree, v};
  return FormExpr(make_node(std::move(n)));
}

FormExpr FormExpr::lmc(int arity, int factor) {
  require(factor >= 0 && factor < arity, "lmc: factor out of range");
  Node n{Kind::lmc, arity, 1, Valued::lie};
  n.factor = factor;
  return FormExpr(make_node(std::move(n)));
}

FormExpr FormExpr::rmc(int arity, int factor) {
  require(factor >= 0 && factor < arity, "rmc: factor out of range");
  Node n{Kind::rmc, arity, 1, Valued::lie};
  n.factor = factor;
  return FormExpr(make_node(std::move(n)));
}

FormExpr FormExpr::ad(GroupWord w, FormExpr body) {
  require(body.valued() == Valued::lie, "ad: body must be Lie-valued");
  require(w.arity() == body.arity(), "ad: word arity mismatch");
  if (body.is_zero()) return body;
  if (w.reduced().is_identity()) return body;
  Node n{Kind::ad, body.arity(), body.degree(), Valued::lie};
  n.word = std::move(w);
  n.kids = {std::move(body)};
  return FormExpr(make_node(std::move(n)));
}

FormExpr FormExpr::lie_const(int arity, Eigen::MatrixXd m) {
  require(m.rows() == m.cols() && m.rows() > 0, "lie_const: square matrix");
  Node n{Kind::lie_const, arity, 0, Valued::lie};
  n.mat = std::move(m);
  return FormExpr(make_node(std::move(n)));
}

FormExpr FormExpr::slot(int arity, std::string name) {
  require(!name.empty(), "slot: empty name");
  Node n{Kind::slot, arity, 0, Valued::lie};
  n.name = std::move(name);
  return FormExpr(make_node(std::move(n)));
}

FormExpr FormExpr::pair(FormExpr a, FormExpr b) {
  require(a.arity() == b.arity(), "pair: arity mismatch");
  require(a.valued() == Valued::lie && b.valued() == Valued::lie,
          "pair: arguments must be Lie-valued");
  int deg = a.degree() + b.degree();
  if (a.is_zero() || b.is_zero())
    return zero(a.arity(), deg, Valued::scalar);
  Node n{Kind::pair, a.arity(), deg, Valued::scalar};
  n.kids = {std::move(a), std::move(b)};
  return FormExpr(make_node(std::move(n)));
}

FormExpr FormExpr::bracket(FormExpr a, FormExpr b) {
  require(a.arity() == b.arity(), "bracket: arity mismatch");
  require(a.valued() == Valued::lie && b.valued() == Valued::lie,
          "bracket: arguments must be Lie-valued");
  int deg = a.degree() + b.degree();
  if (a.is_zero() || b.is_zero()) return zero(a.arity(), deg, Valued::lie);
  Node n{Kind::bracket, a.arity(), deg, Valued::lie};
  n.kids = {std::move(a), std::move(b)};
  return FormExpr(make_node(std::move(n)));
}

FormExpr FormExpr::wedge(FormExpr a, FormExpr b) {
  require(a.arity() == b.arity(), "wedge: arity mismatch");
  require(a.valued() == Valued::scalar && b.valued() == Valued::scalar,
          "wedge: arguments must be scalar-valued");
  int deg = a.degree() + b.degree();
  if (a.is_zero() || b.is_zero())
    return zero(a.arity(), deg, Valued::scalar);
  Node n{Kind::wedge, a.arity(), deg, Valued::scalar};
  n.kids = {std::move(a), std::move(b)};
  return FormExpr(make_node(std::move(n)));
}

FormExpr FormExpr::sum(std::vector<std::pair<Rational, FormExpr>> terms,
                       int arity, int degree, Valued v) {
  std::vector<std::pair<Rational, FormExpr>> kept;
  for (auto& [c, e] : terms) {
    require(e.arity() == arity && e.degree() == degree && e.valued() == v,
            "sum: term shape mismatch");
    if (c == 0 || e.is_zero()) continue;
    if (e.kind() == Kind::sum) {
      // Splice nested sums so linear combinations stay flat.
      for (const auto& [ci, ei] : e.terms())
        kept.emplace_back(c * ci, ei);
    } else {
      kept.emplace_back(std::move(c), std::move(e));
    }
  }
  if (kept.empty()) return zero(arity, degree, v);
  if (kept.size() == 1 && kept[0].first == 1) return kept[0].second;
  Node n{Kind::sum, arity, degree, v};
  n.sum_terms = std::move(kept);
  return FormExpr(make_node(std::move(n)));
}

FormExpr FormExpr::sum(std::vector<std::pair<Rational, FormExpr>> terms) {
  require(!terms.empty(), "sum: shape needed for empty sums");
  const FormExpr& first = terms.front().second;
  return sum(std::move(terms), first.arity(), first.degree(), first.valued());
}

int FormExpr::factor() const {
  require(kind() == Kind::lmc || kind() == Kind::rmc, "factor(): wrong kind");
  return node_->factor;
}

const GroupWord& FormExpr::word() const {
  require(kind() == Kind::ad, "word(): wrong kind");
  return *node_->word;
}

const FormExpr& FormExpr::body() const {
  require(kind() == Kind::ad, "body(): wrong kind");
  return node_->kids[0];
}

const FormExpr& FormExpr::lhs() const {
  require(kind() == Kind::pair || kind() == Kind::bracket ||
              kind() == Kind::wedge,
          "lhs(): wrong kind");
  return node_->kids[0];
}

const FormExpr& FormExpr::rhs() const {
  require(kind() == Kind::pair || kind() == Kind::bracket ||
              kind() == Kind::wedge,
          "rhs(): wrong kind");
  return node_->kids[1];
}

const Eigen::MatrixXd& FormExpr::matrix() const {
  require(kind() == Kind::lie_const, "matrix(): wrong kind");
  return node_->mat;
}

const std::string& FormExpr::slot_name() const {
  require(kind() == Kind::slot, "slot_name(): wrong kind");
  return node_->name;
}

const std::vector<std::pair<Rational, FormExpr>>& FormExpr::terms() const {
  require(kind() == Kind::sum, "terms(): wrong kind");
  return node_->sum_terms;
}

std::set<std::string> FormExpr::slots() const {
  std::set<std::string> out;
  if (kind() == Kind::slot) out.insert(node_->name);
  for (const FormExpr& k : node_->kids) {
    auto sub = k.slots();
    out.insert(sub.begin(), sub.end());
  }
  if (kind() == Kind::sum)
    for (const auto& [c, t] : node_->sum_terms) {
      auto sub = t.slots();
      out.insert(sub.begin(), sub.end());
    }
  return out;
}

namespace {

void print_word(std::ostringstream& os, const GroupWord& w) {
  os << "(w";
  for (const Letter& l : w.letters()) os << " " << l.factor << " " << l.exp;
  os << ")";
}

void print_key(std::ostringstream& os, const FormExpr& e) {
  switch (e.kind()) {
    case Kind::zero:
      os << "(zero " << e.degree() << " "
         << (e.valued() == Valued::lie ? "lie" : "scalar") << ")";
      return;
    case Kind::lmc:
      os << "(lmc " << e.factor() << ")";
      return;
    case Kind::rmc:
      os << "(rmc " << e.factor() << ")";
      return;
    case Kind::ad:
      os << "(ad ";
      print_word(os, e.word());
      os << " ";
      print_key(os, e.body());
      os << ")";
      return;
    case Kind::lie_const: {
      const Eigen::MatrixXd& m = e.matrix();
      os << "(const " << m.rows();
      char buf[40];
      for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
          std::snprintf(buf, sizeof buf, " %.17g", m(i, j));
          os << buf;
        }
      os << ")";
      return;
    }
    case Kind::slot:
      os << "(slot " << e.slot_name() << ")";
      return;
    case Kind::pair:
    case Kind::bracket:
    case Kind::wedge: {
      const char* tag = e.kind() == Kind::pair
                            ? "pair"
                            : (e.kind() == Kind::bracket ? "bracket" : "wedge");
      os << "(" << tag << " ";
      print_key(os, e.lhs());
      os << " ";
      print_key(os, e.rhs());
      os << ")";
      return;
    }
    case Kind::sum: {
      os << "(sum";
      for (const auto& [c, t] : e.terms()) {
        os << " (" << rat_str(c) << " ";
        print_key(os, t);
        os << ")";
      }
      os << ")";
      return;
    }
  }
}

}  // namespace

std::string FormExpr::key() const {
  std::ostringstream os;
  print_key(os, *this);
  return os.str();
}

FormExpr operator+(const FormExpr& a, const FormExpr& b) {
  return FormExpr::sum({{rat(1), a}, {rat(1), b}}, a.arity(), a.degree(),
                       a.valued());
}

FormExpr operator-(const FormExpr& a, const FormExpr& b) {
  return FormExpr::sum({{rat(1), a}, {rat(-1), b}}, a.arity(), a.degree(),
                       a.valued());
}

FormExpr operator*(const Rational& c, const FormExpr& e) {
  if (c == 0 || e.is_zero())
    return FormExpr::zero(e.arity(), e.degree(), e.valued());
  if (e.kind() == Kind::sum) {
    std::vector<std::pair<Rational, FormExpr>> terms;
    for (const auto& [k, t] : e.terms()) terms.emplace_back(c * k, t);
    return FormExpr::sum(std::move(terms), e.arity(), e.degree(), e.valued());
  }
  return FormExpr::sum({{c, e}}, e.arity(), e.degree(), e.valued());
}

FormExpr FormExpr::operator-() const { return rat(-1) * *this; }

FormExpr bind_slot(const FormExpr& e, const std::string& name,
                   const Eigen::MatrixXd& value) {
  switch (e.kind()) {
    case Kind::slot:
      if (e.slot_name() == name) return FormExpr::lie_const(e.arity(), value);
      return e;
    case Kind::ad:
      return FormExpr::ad(e.word(), bind_slot(e.body(), name, value));
    case Kind::pair:
      return FormExpr::pair(bind_slot(e.lhs(), name, value),
                            bind_slot(e.rhs(), name, value));
    case Kind::bracket:
      return FormExpr::bracket(bind_slot(e.lhs(), name, value),
                               bind_slot(e.rhs(), name, value));
    case Kind::wedge:
      return FormExpr::wedge(bind_slot(e.lhs(), name, value),
                             bind_slot(e.rhs(), name, value));
    case Kind::sum: {
      std::vector<std::pair<Rational, FormExpr>> terms;
      for (const auto& [c, t] : e.terms())
        terms.emplace_back(c, bind_slot(t, name, value));
      return FormExpr::sum(std::move(terms), e.arity(), e.degree(),
                           e.valued());
    }
    default:
      return e;
  }
}

FormExpr rename_slot(const FormExpr& e, const std::string& from,
                     const std::string& to) {
  switch (e.kind()) {
    case Kind::slot:
      if (e.slot_name() == from) return FormExpr::slot(e.arity(), to);
      return e;
    case Kind::ad:
      return FormExpr::ad(e.word(), rename_slot(e.body(), from, to));
    case Kind::pair:
      return FormExpr::pair(rename_slot(e.lhs(), from, to),
                            rename_slot(e.rhs(), from, to));
    case Kind::bracket:
      return FormExpr::bracket(rename_slot(e.lhs(), from, to),
                               rename_slot(e.rhs(), from, to));
    case Kind::wedge:
      return FormExpr::wedge(rename_slot(e.lhs(), from, to),
                             rename_slot(e.rhs(), from, to));
    case Kind::sum: {
      std::vector<std::pair<Rational, FormExpr>> terms;
      for (const auto& [c, t] : e.terms())
        terms.emplace_back(c, rename_slot(t, from, to));
      return FormExpr::sum(std::move(terms), e.arity(), e.degree(),
                           e.valued());
    }
    default:
      return e;
  }
}

}  // namespace gforms
