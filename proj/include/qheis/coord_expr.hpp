#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "qheis/common.hpp"
#include "qheis/params.hpp"

namespace qheis {

/**
 * Closed symbolic scalar over a finite coordinate tuple, used to express the
 * substitutions, phases and amplitudes of the geometric operators.  The
 * grammar is deliberately small: constants, coordinates, the deformation
 * parameter, sums, products, exp, eta_lambda and reciprocal.  Everything the
 * operator calculus produces stays inside this grammar, including
 * compositions and inverses.
 */
class CoordExpr {
 public:
  enum class Kind { Const, Coord, Lambda, Add, Mul, Exp, Eta, Recip };

  CoordExpr() : CoordExpr(constant(0.0)) {}

  static CoordExpr constant(double v) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Const;
    n->value = v;
    return CoordExpr(std::move(n));
  }

  static CoordExpr coord(std::size_t index) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Coord;
    n->index = index;
    return CoordExpr(std::move(n));
  }

  static CoordExpr lambda() {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Lambda;
    return CoordExpr(std::move(n));
  }

  static CoordExpr exp_of(CoordExpr arg) { return unary(Kind::Exp, std::move(arg)); }
  static CoordExpr eta_of(CoordExpr arg) { return unary(Kind::Eta, std::move(arg)); }
  static CoordExpr recip(CoordExpr arg) { return unary(Kind::Recip, std::move(arg)); }

  friend CoordExpr operator+(const CoordExpr& a, const CoordExpr& b) {
    return nary(Kind::Add, {a, b});
  }
  friend CoordExpr operator-(const CoordExpr& a, const CoordExpr& b) {
    return nary(Kind::Add, {a, nary(Kind::Mul, {constant(-1.0), b})});
  }
  friend CoordExpr operator*(const CoordExpr& a, const CoordExpr& b) {
    return nary(Kind::Mul, {a, b});
  }
  CoordExpr operator-() const {
    return nary(Kind::Mul, {constant(-1.0), *this});
  }

  /// e^{c * lambda * coord_k}, the ubiquitous modular scaling factor.
  static CoordExpr exp_lambda_coord(double c, std::size_t k) {
    return exp_of(constant(c) * lambda() * coord(k));
  }

  double eval(const std::vector<double>& coords, double lam) const {
    return eval_node(*node_, coords, lam);
  }

  /// Substitute coord(i) -> repl[i] throughout; the basis of composition.
  CoordExpr substituted(const std::vector<CoordExpr>& repl) const {
    return CoordExpr(subst_node(*node_, repl));
  }

  /// Remap coordinate indices, coord(i) -> coord(map[i]); used when an
  /// operator on few legs is embedded into a larger leg tuple.
  CoordExpr remapped(const std::vector<std::size_t>& map) const {
    std::vector<CoordExpr> repl;
    repl.reserve(map.size());
    for (std::size_t m : map) repl.push_back(coord(m));
    return substituted(repl);
  }

  /// Serialize the expression tree; used for golden-file regression of the
  /// operator builders.
  nlohmann::json to_json() const { return json_node(*node_); }

 private:
  struct Node {
    Kind kind = Kind::Const;
    double value = 0.0;
    std::size_t index = 0;
    std::vector<std::shared_ptr<const Node>> args;
  };

  explicit CoordExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static CoordExpr unary(Kind k, CoordExpr arg) {
    CoordExpr e;
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->args.push_back(arg.node_);
    e.node_ = std::move(n);
    return e;
  }

  static CoordExpr nary(Kind k, std::vector<CoordExpr> args) {
    CoordExpr e;
    auto n = std::make_shared<Node>();
    n->kind = k;
    for (auto& a : args) n->args.push_back(a.node_);
    e.node_ = std::move(n);
    return e;
  }

  static double eval_node(const Node& n, const std::vector<double>& coords,
                          double lam) {
    switch (n.kind) {
      case Kind::Const:
        return n.value;
      case Kind::Coord:
        if (n.index >= coords.size())
          throw std::out_of_range("CoordExpr: coordinate index out of range");
        return coords[n.index];
      case Kind::Lambda:
        return lam;
      case Kind::Add: {
        double s = 0.0;
        for (const auto& a : n.args) s += eval_node(*a, coords, lam);
        return s;
      }
      case Kind::Mul: {
        double s = 1.0;
        for (const auto& a : n.args) s *= eval_node(*a, coords, lam);
        return s;
      }
      case Kind::Exp:
        return std::exp(eval_node(*n.args[0], coords, lam));
      case Kind::Eta:
        return eta(lam, eval_node(*n.args[0], coords, lam));
      case Kind::Recip:
        return 1.0 / eval_node(*n.args[0], coords, lam);
    }
    throw std::logic_error("CoordExpr: unknown node kind");
  }

  static nlohmann::json json_node(const Node& n) {
    switch (n.kind) {
      case Kind::Const:
        return {{"k", "const"}, {"v", n.value}};
      case Kind::Coord:
        return {{"k", "coord"}, {"i", n.index}};
      case Kind::Lambda:
        return {{"k", "lambda"}};
      default:
        break;
    }
    const char* name = nullptr;
    switch (n.kind) {
      case Kind::Add:   name = "add"; break;
      case Kind::Mul:   name = "mul"; break;
      case Kind::Exp:   name = "exp"; break;
      case Kind::Eta:   name = "eta"; break;
      case Kind::Recip: name = "recip"; break;
      default:
        throw std::logic_error("CoordExpr: unknown node kind");
    }
    nlohmann::json args = nlohmann::json::array();
    for (const auto& a : n.args) args.push_back(json_node(*a));
    return {{"k", name}, {"args", std::move(args)}};
  }

  static std::shared_ptr<const Node> subst_node(
      const Node& n, const std::vector<CoordExpr>& repl) {
    if (n.kind == Kind::Coord) {
      if (n.index >= repl.size())
        throw std::out_of_range("CoordExpr: substitution index out of range");
      return repl[n.index].node_;
    }
    if (n.kind == Kind::Const || n.kind == Kind::Lambda)
      return std::make_shared<Node>(n);
    auto out = std::make_shared<Node>();
    out->kind = n.kind;
    out->value = n.value;
    out->index = n.index;
    out->args.reserve(n.args.size());
    for (const auto& a : n.args) out->args.push_back(subst_node(*a, repl));
    return out;
  }

  std::shared_ptr<const Node> node_;
};

}  // namespace qheis
