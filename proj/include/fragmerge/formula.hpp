#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fragmerge/interp.hpp"

namespace fragmerge {

// Propositional formula over a fixed universe. Immutable; copies share
// structure.
class Formula {
 public:
  enum class Op { Atom, True, False, Not, And, Or, Implies, Iff };

  static Formula atom(UniversePtr u, std::size_t index);
  static Formula top(UniversePtr u);
  static Formula bottom(UniversePtr u);
  static Formula negation(const Formula& f);
  static Formula binary(Op op, const Formula& lhs, const Formula& rhs);

  Op op() const { return node_->op; }
  std::size_t atom_index() const { return node_->atom; }
  const UniversePtr& universe() const { return universe_; }

  // Operand of Not; left/right operand of a binary connective.
  Formula operand() const;
  Formula lhs() const;
  Formula rhs() const;

  bool evaluate(Bits w) const;
  bool evaluate(const Interpretation& w) const;

  // Minimal parentheses, single spaces around binary operators.
  std::string to_string() const;

  bool operator==(const Formula& other) const;

 private:
  struct Node {
    Op op;
    std::size_t atom = 0;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };

  Formula(UniversePtr u, std::shared_ptr<const Node> node)
      : universe_(std::move(u)), node_(std::move(node)) {}

  static bool evaluate(const Node& n, Bits w);
  static bool equal(const Node& a, const Node& b);
  static void print(const Node& n, const Universe& u, std::string& out);

  UniversePtr universe_;
  std::shared_ptr<const Node> node_;
};

Formula operator!(const Formula& f);
Formula operator&(const Formula& a, const Formula& b);
Formula operator|(const Formula& a, const Formula& b);

// Grammar: atoms [a-z][a-z0-9_]*, constants T and F, operators ! & | -> <->,
// parentheses. Precedence ! > & > | > -> > <->; -> is right-associative, the
// other binary operators associate to the left.
Formula parse(std::string_view text, const UniversePtr& u);

ModelSet models(const Formula& phi, std::size_t cap = kDefaultAtomCap);

struct Literal {
  std::size_t atom;
  bool positive;
  auto operator<=>(const Literal&) const = default;
};

// A non-tautological disjunction of literals, sorted by atom.
class Clause {
 public:
  // Returns nullopt for tautological literal sets (some atom with both signs).
  static std::optional<Clause> make(std::vector<Literal> literals);

  std::span<const Literal> literals() const { return literals_; }
  std::size_t size() const { return literals_.size(); }
  std::size_t positives() const;
  bool satisfied_by(Bits w) const;
  Formula to_formula(const UniversePtr& u) const;

  bool operator==(const Clause&) const = default;

 private:
  std::vector<Literal> literals_;
};

enum class ClauseKind { Horn, Krom, Both, General };

ClauseKind classify_clause(std::size_t literals, std::size_t positives);

struct Classification {
  enum class Verdict { Horn, Krom, HornAndKrom, General, NonCnf };
  Verdict verdict;
  // One entry per conjunct when the input is in CNF.
  std::vector<ClauseKind> clauses;
};

std::string to_string(ClauseKind kind);
std::string to_string(Classification::Verdict verdict);

// Syntactic classification of a CNF formula; anything else is NonCnf.
Classification classify(const Formula& phi);

struct SynthesisOptions {
  // Drop clauses entailed by the remaining ones.
  bool minimize = false;
};

// Fragment formula whose models are exactly `m`. Requires `m` closed under the
// fragment's function and a fragment with a syntactic clause class.
Formula synthesize(const ModelSet& m, const Fragment& fragment,
                   SynthesisOptions options = {});

}  // namespace fragmerge
