#include "fragmerge/formula.hpp"

#include <algorithm>
#include <cctype>

namespace fragmerge {

namespace {

using Op = Formula::Op;

int precedence(Op op) {
  switch (op) {
    case Op::Iff:
      return 1;
    case Op::Implies:
      return 2;
    case Op::Or:
      return 3;
    case Op::And:
      return 4;
    case Op::Not:
      return 5;
    default:
      return 6;
  }
}

const char* symbol(Op op) {
  switch (op) {
    case Op::And:
      return "&";
    case Op::Or:
      return "|";
    case Op::Implies:
      return "->";
    case Op::Iff:
      return "<->";
    default:
      return "?";
  }
}

class Parser {
 public:
  Parser(std::string_view text, const UniversePtr& u) : text_(text), u_(u) {}

  Formula run() {
    Formula f = iff();
    skip();
    if (pos_ != text_.size()) throw SyntaxError(pos_, "unexpected input");
    return f;
  }

 private:
  void skip() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool accept(std::string_view tok) {
    skip();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  Formula iff() {
    Formula f = implies();
    while (accept("<->")) f = Formula::binary(Op::Iff, f, implies());
    return f;
  }

  Formula implies() {
    Formula f = disjunction();
    if (accept("->")) return Formula::binary(Op::Implies, f, implies());
    return f;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (accept("|")) f = Formula::binary(Op::Or, f, conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (accept("&")) f = Formula::binary(Op::And, f, unary());
    return f;
  }

  Formula unary() {
    if (accept("!")) return Formula::negation(unary());
    return primary();
  }

  Formula primary() {
    skip();
    if (pos_ >= text_.size()) throw SyntaxError(pos_, "unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Formula f = iff();
      if (!accept(")")) throw SyntaxError(pos_, "expected ')'");
      return f;
    }
    if (c == 'T' || c == 'F') {
      ++pos_;
      return c == 'T' ? Formula::top(u_) : Formula::bottom(u_);
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::islower(static_cast<unsigned char>(text_[pos_])) ||
              std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto i = u_->index_of(name);
      if (!i) throw UnknownAtom(name);
      return Formula::atom(u_, *i);
    }
    throw SyntaxError(pos_, std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  const UniversePtr& u_;
  std::size_t pos_ = 0;
};

// Flattens a left- or right-nested chain of `op` into its operands.
void flatten(const Formula& f, Op op, std::vector<Formula>& out) {
  if (f.op() == op) {
    flatten(f.lhs(), op, out);
    flatten(f.rhs(), op, out);
  } else {
    out.push_back(f);
  }
}

// Literal list of a disjunction, or nullopt if it is not one. `F` disjuncts
// are dropped; a `T` disjunct makes the clause trivially true (nullopt too).
std::optional<std::vector<Literal>> as_clause(const Formula& f) {
  std::vector<Formula> parts;
  flatten(f, Op::Or, parts);
  std::vector<Literal> lits;
  for (const auto& p : parts) {
    if (p.op() == Op::Atom) {
      lits.push_back({p.atom_index(), true});
    } else if (p.op() == Op::Not && p.operand().op() == Op::Atom) {
      lits.push_back({p.operand().atom_index(), false});
    } else if (p.op() == Op::False) {
      continue;
    } else {
      return std::nullopt;
    }
  }
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  return lits;
}

// Every non-tautological, non-empty clause over `n` atoms admitted by the
// fragment, ordered by size and then by literal sequence.
std::vector<Clause> clause_pool(std::size_t n, const Fragment& fragment) {
  std::vector<Clause> pool;
  // Each atom is absent, positive or negative.
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  for (std::size_t code = 1; code < total; ++code) {
    std::vector<Literal> lits;
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i, c /= 3) {
      if (c % 3 == 1) lits.push_back({i, true});
      if (c % 3 == 2) lits.push_back({i, false});
    }
    std::size_t pos = std::count_if(lits.begin(), lits.end(),
                                    [](const Literal& l) { return l.positive; });
    if (!fragment.admits_clause(lits.size(), pos)) continue;
    if (auto clause = Clause::make(std::move(lits))) pool.push_back(*clause);
  }
  std::stable_sort(pool.begin(), pool.end(),
                   [](const Clause& a, const Clause& b) {
                     if (a.size() != b.size()) return a.size() < b.size();
                     auto la = a.literals();
                     auto lb = b.literals();
                     for (std::size_t i = 0; i < la.size(); ++i) {
                       if (la[i].atom != lb[i].atom)
                         return la[i].atom < lb[i].atom;
                       if (la[i].positive != lb[i].positive)
                         return la[i].positive;
                     }
                     return false;
                   });
  return pool;
}

Formula conjoin(const UniversePtr& u, const std::vector<Clause>& clauses) {
  if (clauses.empty()) return Formula::top(u);
  Formula f = clauses.front().to_formula(u);
  for (std::size_t i = 1; i < clauses.size(); ++i)
    f = f & clauses[i].to_formula(u);
  return f;
}

bool models_equal(const std::vector<Clause>& clauses, const ModelSet& target) {
  const std::size_t count = std::size_t{1} << target.universe()->size();
  for (std::size_t w = 0; w < count; ++w) {
    const Bits b = static_cast<Bits>(w);
    bool sat = std::all_of(clauses.begin(), clauses.end(),
                           [&](const Clause& c) { return c.satisfied_by(b); });
    if (sat != target.contains(b)) return false;
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Formula

Formula Formula::atom(UniversePtr u, std::size_t index) {
  if (index >= u->size()) throw Error("atom index out of range");
  return Formula(std::move(u), std::make_shared<const Node>(Node{Op::Atom, index, {}, {}}));
}

Formula Formula::top(UniversePtr u) {
  return Formula(std::move(u), std::make_shared<const Node>(Node{Op::True, 0, {}, {}}));
}

Formula Formula::bottom(UniversePtr u) {
  return Formula(std::move(u), std::make_shared<const Node>(Node{Op::False, 0, {}, {}}));
}

Formula Formula::negation(const Formula& f) {
  return Formula(f.universe_,
                 std::make_shared<const Node>(Node{Op::Not, 0, f.node_, {}}));
}

Formula Formula::binary(Op op, const Formula& lhs, const Formula& rhs) {
  if (op != Op::And && op != Op::Or && op != Op::Implies && op != Op::Iff)
    throw Error("not a binary connective");
  require_same_universe(lhs.universe_, rhs.universe_);
  return Formula(lhs.universe_, std::make_shared<const Node>(
                                    Node{op, 0, lhs.node_, rhs.node_}));
}

Formula Formula::operand() const {
  if (op() != Op::Not) throw Error("operand() on a non-negation");
  return Formula(universe_, node_->lhs);
}

Formula Formula::lhs() const {
  if (!node_->rhs) throw Error("lhs() on a non-binary formula");
  return Formula(universe_, node_->lhs);
}

Formula Formula::rhs() const {
  if (!node_->rhs) throw Error("rhs() on a non-binary formula");
  return Formula(universe_, node_->rhs);
}

bool Formula::evaluate(const Node& n, Bits w) {
  switch (n.op) {
    case Op::Atom:
      return (w >> n.atom) & 1U;
    case Op::True:
      return true;
    case Op::False:
      return false;
    case Op::Not:
      return !evaluate(*n.lhs, w);
    case Op::And:
      return evaluate(*n.lhs, w) && evaluate(*n.rhs, w);
    case Op::Or:
      return evaluate(*n.lhs, w) || evaluate(*n.rhs, w);
    case Op::Implies:
      return !evaluate(*n.lhs, w) || evaluate(*n.rhs, w);
    case Op::Iff:
      return evaluate(*n.lhs, w) == evaluate(*n.rhs, w);
  }
  return false;
}

bool Formula::evaluate(Bits w) const { return evaluate(*node_, w); }

bool Formula::evaluate(const Interpretation& w) const {
  require_same_universe(universe_, w.universe());
  return evaluate(*node_, w.bits());
}

bool Formula::equal(const Node& a, const Node& b) {
  if (&a == &b) return true;
  if (a.op != b.op) return false;
  switch (a.op) {
    case Op::Atom:
      return a.atom == b.atom;
    case Op::True:
    case Op::False:
      return true;
    case Op::Not:
      return equal(*a.lhs, *b.lhs);
    default:
      return equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
  }
}

bool Formula::operator==(const Formula& other) const {
  return same_universe(universe_, other.universe_) &&
         equal(*node_, *other.node_);
}

void Formula::print(const Node& n, const Universe& u, std::string& out) {
  switch (n.op) {
    case Op::Atom:
      out += u.name(n.atom);
      return;
    case Op::True:
      out += 'T';
      return;
    case Op::False:
      out += 'F';
      return;
    case Op::Not: {
      out += '!';
      const bool paren = precedence(n.lhs->op) < precedence(Op::Not);
      if (paren) out += '(';
      print(*n.lhs, u, out);
      if (paren) out += ')';
      return;
    }
    default:
      break;
  }
  const int p = precedence(n.op);
  const bool right_assoc = n.op == Op::Implies;
  const int pl = precedence(n.lhs->op);
  const int pr = precedence(n.rhs->op);
  const bool paren_l = pl < p || (pl == p && right_assoc);
  const bool paren_r = pr < p || (pr == p && !right_assoc);
  if (paren_l) out += '(';
  print(*n.lhs, u, out);
  if (paren_l) out += ')';
  out += ' ';
  out += symbol(n.op);
  out += ' ';
  if (paren_r) out += '(';
  print(*n.rhs, u, out);
  if (paren_r) out += ')';
}

std::string Formula::to_string() const {
  std::string out;
  print(*node_, *universe_, out);
  return out;
}

Formula operator!(const Formula& f) { return Formula::negation(f); }
Formula operator&(const Formula& a, const Formula& b) {
  return Formula::binary(Formula::Op::And, a, b);
}
Formula operator|(const Formula& a, const Formula& b) {
  return Formula::binary(Formula::Op::Or, a, b);
}

Formula parse(std::string_view text, const UniversePtr& u) {
  return Parser(text, u).run();
}

ModelSet models(const Formula& phi, std::size_t cap) {
  const auto& u = phi.universe();
  require_enumerable(*u, cap);
  const std::size_t count = std::size_t{1} << u->size();
  std::vector<Bits> out;
  for (std::size_t w = 0; w < count; ++w)
    if (phi.evaluate(static_cast<Bits>(w))) out.push_back(static_cast<Bits>(w));
  return ModelSet(u, std::move(out));
}

// ---------------------------------------------------------------------------
// Clauses

std::optional<Clause> Clause::make(std::vector<Literal> literals) {
  std::sort(literals.begin(), literals.end());
  literals.erase(std::unique(literals.begin(), literals.end()),
                 literals.end());
  for (std::size_t i = 1; i < literals.size(); ++i)
    if (literals[i].atom == literals[i - 1].atom) return std::nullopt;
  Clause c;
  c.literals_ = std::move(literals);
  return c;
}

std::size_t Clause::positives() const {
  return std::count_if(literals_.begin(), literals_.end(),
                       [](const Literal& l) { return l.positive; });
}

bool Clause::satisfied_by(Bits w) const {
  return std::any_of(literals_.begin(), literals_.end(), [&](const Literal& l) {
    return (((w >> l.atom) & 1U) != 0) == l.positive;
  });
}

Formula Clause::to_formula(const UniversePtr& u) const {
  if (literals_.empty()) return Formula::bottom(u);
  auto lit = [&](const Literal& l) {
    Formula a = Formula::atom(u, l.atom);
    return l.positive ? a : !a;
  };
  Formula f = lit(literals_.front());
  for (std::size_t i = 1; i < literals_.size(); ++i) f = f | lit(literals_[i]);
  return f;
}

ClauseKind classify_clause(std::size_t literals, std::size_t positives) {
  const bool horn = positives <= 1;
  const bool krom = literals <= 2;
  if (horn && krom) return ClauseKind::Both;
  if (horn) return ClauseKind::Horn;
  if (krom) return ClauseKind::Krom;
  return ClauseKind::General;
}

std::string to_string(ClauseKind kind) {
  switch (kind) {
    case ClauseKind::Horn:
      return "horn";
    case ClauseKind::Krom:
      return "krom";
    case ClauseKind::Both:
      return "horn+krom";
    case ClauseKind::General:
      return "general";
  }
  return "?";
}

std::string to_string(Classification::Verdict verdict) {
  using V = Classification::Verdict;
  switch (verdict) {
    case V::Horn:
      return "horn";
    case V::Krom:
      return "krom";
    case V::HornAndKrom:
      return "horn+krom";
    case V::General:
      return "general";
    case V::NonCnf:
      return "general-noncnf";
  }
  return "?";
}

Classification classify(const Formula& phi) {
  using V = Classification::Verdict;
  std::vector<Formula> conjuncts;
  flatten(phi, Op::And, conjuncts);
  Classification result{V::HornAndKrom, {}};
  bool horn = true;
  bool krom = true;
  for (const auto& c : conjuncts) {
    if (c.op() == Op::True) continue;
    auto lits = as_clause(c);
    if (!lits) {
      bool is_true_disjunction = false;
      // A disjunction containing T is a valid (trivial) clause.
      std::vector<Formula> parts;
      flatten(c, Op::Or, parts);
      if (std::any_of(parts.begin(), parts.end(),
                      [](const Formula& p) { return p.op() == Op::True; }))
        is_true_disjunction = true;
      if (!is_true_disjunction) return {V::NonCnf, {}};
      continue;
    }
    std::size_t pos = std::count_if(lits->begin(), lits->end(),
                                    [](const Literal& l) { return l.positive; });
    ClauseKind kind = classify_clause(lits->size(), pos);
    result.clauses.push_back(kind);
    horn = horn && (kind == ClauseKind::Horn || kind == ClauseKind::Both);
    krom = krom && (kind == ClauseKind::Krom || kind == ClauseKind::Both);
  }
  if (horn && krom)
    result.verdict = V::HornAndKrom;
  else if (horn)
    result.verdict = V::Horn;
  else if (krom)
    result.verdict = V::Krom;
  else
    result.verdict = V::General;
  return result;
}

// ---------------------------------------------------------------------------
// Synthesis

Formula synthesize(const ModelSet& m, const Fragment& fragment,
                   SynthesisOptions options) {
  if (!fragment.clause_class) throw NoSyntacticFragment();
  const auto& u = m.universe();
  require_enumerable(*u);
  if (auto w = closure_witness(fragment.beta, m)) {
    std::string rendered = fragment.beta.name() + "(";
    for (std::size_t i = 0; i < w->size(); ++i) {
      if (i) rendered += ", ";
      rendered += render_interpretation(*u, (*w)[i]);
    }
    rendered += ") = " +
                render_interpretation(*u, fragment.beta.apply(*w, u->size())) +
                " is missing";
    throw NotClosed(*w, rendered);
  }

  if (m.empty()) {
    Formula a = Formula::atom(u, 0);
    return a & !a;
  }

  std::vector<Clause> chosen;
  for (auto& c : clause_pool(u->size(), fragment)) {
    auto members = m.members();
    if (std::all_of(members.begin(), members.end(),
                    [&](Bits w) { return c.satisfied_by(w); }))
      chosen.push_back(std::move(c));
  }

  if (!models_equal(chosen, m))
    throw std::logic_error("synthesized clause set does not match model set");

  if (options.minimize) {
    // Walk from the back so short clauses are preferred as survivors.
    for (std::size_t i = chosen.size(); i-- > 0;) {
      std::vector<Clause> rest = chosen;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
      if (models_equal(rest, m)) chosen = std::move(rest);
    }
  }
  return conjoin(u, chosen);
}

}  // namespace fragmerge
