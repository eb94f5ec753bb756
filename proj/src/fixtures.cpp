#include <algorithm>
#include <functional>

#include "fragmerge/formula.hpp"
#include "fragmerge/postulates.hpp"

namespace fragmerge {

namespace {

using Column = std::pair<std::string, std::function<std::string(Bits)>>;

struct NamedSet {
  std::string name;
  ModelSet models;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

ModelSet sets(const UniversePtr& u, std::string_view text) {
  return ModelSet(u, parse_interpretation_list(*u, text));
}

Profile profile_of(const std::vector<NamedSet>& bases) {
  std::vector<Base> out;
  for (const auto& b : bases) out.emplace_back(b.models);
  return Profile(std::move(out));
}

class Builder {
 public:
  Builder(std::string id, std::string title) {
    report_.id = std::move(id);
    report_.title = std::move(title);
  }

  // A table whose rows are recomputed for each listed interpretation. Also
  // checks that the rows are exactly the models of `mu`.
  void table(const std::string& title, const UniversePtr& u,
             const ModelSet& mu, const std::vector<Column>& columns,
             const std::vector<std::pair<std::string, std::vector<std::string>>>&
                 expected) {
    FixtureTable t;
    t.title = title;
    for (const auto& c : columns) t.columns.push_back(c.first);
    std::vector<Bits> labels;
    for (const auto& [label, values] : expected) {
      Bits w = parse_interpretation(*u, label);
      labels.push_back(w);
      t.row_labels.push_back(label);
      std::vector<FixtureCell> row;
      for (std::size_t i = 0; i < columns.size(); ++i)
        row.push_back({values.at(i), columns[i].second(w)});
      t.rows.push_back(std::move(row));
    }
    report_.tables.push_back(std::move(t));
    check(title + ": rows are mod(mu)", mu.to_string(),
          ModelSet(u, labels).to_string());
  }

  void check(std::string label, std::string expected, std::string actual) {
    report_.checks.push_back(
        {std::move(label), {std::move(expected), std::move(actual)}});
  }

  void note(std::string line) { report_.notes.push_back(std::move(line)); }

  FixtureReport done() { return std::move(report_); }

 private:
  FixtureReport report_;
};

std::vector<Column> distance_columns(const std::vector<NamedSet>& bases,
                                     const CountingDistance& d) {
  std::vector<Column> cols;
  for (const auto& k : bases) {
    cols.emplace_back(k.name, [d, m = k.models](Bits w) {
      return std::to_string(dist_to_models(d, w, m));
    });
  }
  return cols;
}

Column aggregate_column(std::string name, const Profile& e,
                        const CountingDistance& d, Aggregator f) {
  return {std::move(name),
          [e, d, f](Bits w) { return score(d, f, w, e).to_string(); }};
}

void check_inputs_closed(Builder& b, const BooleanFn& beta,
                         const std::vector<NamedSet>& sets) {
  for (const auto& s : sets)
    b.check(s.name + " closed under " + beta.name(), "yes",
            yes_no(is_closed(beta, s.models)));
}

std::string verdict(PostulateId id, const MergeOperator& op,
                    const PostulateCase& c, Builder* trace = nullptr) {
  auto w = check_postulate(id, op, c);
  if (w && trace) trace->note(op.label + ": " + w->render());
  return w ? "violated" : "holds";
}

const CountingDistance& hamming() {
  static const CountingDistance d = CountingDistance::hamming();
  return d;
}

const CountingDistance& drastic() {
  static const CountingDistance d = CountingDistance::drastic();
  return d;
}

// ∧-mapping keeping the members of Cl(M) above the lex-minimum of M.
BetaMapping upset_of_lex_min_mapping() {
  const BooleanFn& beta = BooleanFn::conjunction();
  return BetaMapping{"upset-of-lex-min(and)", beta,
                     [beta](const ModelSet& m, std::span<const ModelSet>) {
                       if (m.empty() || is_closed(beta, m)) return m;
                       const Bits low = LexOrder().minimum(m);
                       std::vector<Bits> keep;
                       const ModelSet cl = closure(beta, m);
                       for (Bits x : cl.members())
                         if ((x & low) == low) keep.push_back(x);
                       return ModelSet(m.universe(), std::move(keep));
                     }};
}

// Mapping keeping only the largest member of a non-closed M.
BetaMapping lex_max_mapping(const BooleanFn& beta) {
  return BetaMapping{"lex-max(" + beta.name() + ")", beta,
                     [beta](const ModelSet& m, std::span<const ModelSet>) {
                       if (m.empty() || is_closed(beta, m)) return m;
                       return ModelSet(m.universe(), {m.members().back()});
                     }};
}

// ---------------------------------------------------------------------------

FixtureReport ex1() {
  Builder b("ex1", "Hamming merge of two Horn bases under a Horn constraint");
  auto u = Universe::make({"a", "b"});
  std::vector<NamedSet> bases{{"K1", sets(u, "{a} {a,b}")},
                              {"K2", sets(u, "{b} {a,b}")}};
  ModelSet mu = sets(u, "{} {a} {b}");
  Profile e = profile_of(bases);

  auto cols = distance_columns(bases, hamming());
  cols.push_back(aggregate_column("Sigma", e, hamming(), Aggregator::Sum));
  cols.push_back(aggregate_column("GMax", e, hamming(), Aggregator::GMax));
  b.table("distances (hamming)", u, mu, cols,
          {{"{}", {"1", "1", "2", "(1, 1)"}},
           {"{a}", {"0", "1", "1", "(1, 0)"}},
           {"{b}", {"1", "0", "1", "(1, 0)"}}});

  ModelSet sum = merge(e, mu, hamming(), Aggregator::Sum);
  ModelSet gmax = merge(e, mu, hamming(), Aggregator::GMax);
  b.check("merge hamming,sigma", "{a}, {b}", sum.to_string());
  b.check("merge hamming,gmax", "{a}, {b}", gmax.to_string());
  b.check("result closed under and", "no",
          yes_no(is_closed(BooleanFn::conjunction(), sum)));
  b.check("result closed under maj3", "yes",
          yes_no(is_closed(BooleanFn::majority3(), sum)));
  b.check("krom formula for the result", "(a | b) & (!a | !b)",
          synthesize(sum, Fragment::krom(), {.minimize = true}).to_string());
  std::string horn;
  try {
    horn = synthesize(sum, Fragment::horn()).to_string();
  } catch (const NotClosed&) {
    horn = "not expressible";
  }
  b.check("horn formula for the result", "not expressible", horn);
  return b.done();
}

FixtureReport ex3() {
  Builder b("ex3", "Closure, lex and lex/closure refinements of Hamming-sum");
  auto u = Universe::make({"a", "b"});
  Profile e{sets(u, "{a} {a,b}"), sets(u, "{b} {a,b}")};
  ModelSet mu = sets(u, "{} {a} {b}");
  const BooleanFn& beta = BooleanFn::conjunction();

  ModelSet m = merge(e, mu, hamming(), Aggregator::Sum);
  b.check("merge hamming,sigma", "{a}, {b}", m.to_string());
  b.check("lex order on {a,b}", "{}, {a}, {b}, {a,b}",
          ModelSet::all(u).to_string());
  b.check("lex refinement", "{a}",
          refine(LexRefinement{beta, {}}, m, e, mu).to_string());
  b.check("closure refinement", "{}, {a}, {b}",
          refine(ClosureRefinement{beta}, m, e, mu).to_string());
  b.check("#(M,E)", "2", std::to_string(cardintersection(m, e)));
  b.check("lex/closure refinement", "{}, {a}, {b}",
          refine(LexClosureRefinement{beta, {}}, m, e, mu).to_string());
  return b.done();
}

FixtureReport prop3(bool krom) {
  Builder b(krom ? "prop3-krom" : "prop3-horn",
            std::string("Lex refinement violates IC4 in ") +
                (krom ? "Krom" : "Horn"));
  const BooleanFn& beta =
      krom ? BooleanFn::majority3() : BooleanFn::conjunction();
  auto u = krom ? Universe::make({"a", "b", "c", "d"})
                : Universe::make({"a", "b"});
  std::vector<NamedSet> bases =
      krom ? std::vector<NamedSet>{{"K1", sets(u, "{} {a} {b} {c} {d}")},
                                   {"K2", sets(u, "{a,b} {c,d}")}}
           : std::vector<NamedSet>{{"K1", sets(u, "{} {a} {b}")},
                                   {"K2", sets(u, "{a,b}")}};
  ModelSet mu = krom ? sets(u, "{} {a} {b} {c} {d} {a,b} {c,d}")
                     : ModelSet::all(u);
  Profile e = profile_of(bases);
  auto inputs = bases;
  inputs.push_back({"mu", mu});
  check_inputs_closed(b, beta, inputs);

  auto cols = distance_columns(bases, hamming());
  cols.push_back(aggregate_column("Sigma", e, hamming(), Aggregator::Sum));
  cols.push_back(aggregate_column("GMax", e, hamming(), Aggregator::GMax));
  if (krom) {
    b.table("distances (hamming)", u, mu, cols,
            {{"{}", {"0", "2", "2", "(2, 0)"}},
             {"{a}", {"0", "1", "1", "(1, 0)"}},
             {"{b}", {"0", "1", "1", "(1, 0)"}},
             {"{c}", {"0", "1", "1", "(1, 0)"}},
             {"{d}", {"0", "1", "1", "(1, 0)"}},
             {"{a,b}", {"1", "0", "1", "(1, 0)"}},
             {"{c,d}", {"1", "0", "1", "(1, 0)"}}});
  } else {
    b.table("distances (hamming)", u, mu, cols,
            {{"{}", {"0", "2", "2", "(2, 0)"}},
             {"{a}", {"0", "1", "1", "(1, 0)"}},
             {"{b}", {"0", "1", "1", "(1, 0)"}},
             {"{a,b}", {"1", "0", "1", "(1, 0)"}}});
  }

  const std::string merged =
      krom ? "{a}, {b}, {a,b}, {c}, {d}, {c,d}" : "{a}, {b}, {a,b}";
  PostulateCase c{{e}, {mu}};
  for (auto f : {Aggregator::Sum, Aggregator::GMax}) {
    MergeOperator base = distance_operator(hamming(), f);
    ModelSet m = base(e, mu);
    b.check("merge " + base.label, merged, m.to_string());
    b.check("merge " + base.label + " closed under " + beta.name(), "no",
            yes_no(is_closed(beta, m)));
    MergeOperator lex = refined_operator(base, LexRefinement{beta, {}});
    ModelSet refined = lex(e, mu);
    b.check(lex.label + " result", "{a}", refined.to_string());
    b.check(lex.label + " #(result,E)", "1",
            std::to_string(cardintersection(refined, e)));
    b.check(lex.label + " IC4", "violated",
            verdict(PostulateId::IC4, lex, c, f == Aggregator::Sum ? &b : nullptr));
  }

  // Drastic distance: a minimal non-closed set split into two bases, mu = T.
  auto u2 = Universe::make({"a", "b", "c"});
  std::vector<NamedSet> split;
  ModelSet top = ModelSet::all(krom ? u2 : u);
  if (krom) {
    split = {{"K1", sets(u2, "{a}")}, {"K2", sets(u2, "{b} {c}")}};
  } else {
    split = {{"K1", sets(u, "{a}")}, {"K2", sets(u, "{b}")}};
  }
  Profile e2 = profile_of(split);
  check_inputs_closed(b, beta, split);
  ModelSet together = split[0].models.unite(split[1].models);
  b.check("drastic split: K1 u K2 closed under " + beta.name(), "no",
          yes_no(is_closed(beta, together)));
  for (auto f : {Aggregator::Sum, Aggregator::GMax}) {
    MergeOperator base = distance_operator(drastic(), f);
    b.check("merge " + base.label + " (mu = T)", together.to_string(),
            base(e2, top).to_string());
    MergeOperator lex = refined_operator(base, LexRefinement{beta, {}});
    b.check(lex.label + " IC4 (mu = T)", "violated",
            verdict(PostulateId::IC4, lex, PostulateCase{{e2}, {top}}));
  }
  return b.done();
}

FixtureReport prop4(bool krom) {
  Builder b(krom ? "prop4-krom" : "prop4-horn",
            std::string("Closure refinement of Hamming-GMax violates IC4 in ") +
                (krom ? "Krom" : "Horn"));
  const BooleanFn& beta =
      krom ? BooleanFn::majority3() : BooleanFn::conjunction();
  auto u = krom ? Universe::make({"a", "b", "c", "d"})
                : Universe::make({"a", "b"});
  std::vector<NamedSet> bases{
      {"K1", sets(u, "{}")},
      {"K2", krom ? sets(u, "{a,b} {c,d}") : sets(u, "{a,b}")}};
  ModelSet mu = krom ? sets(u, "{} {a} {b} {c} {d} {a,b} {c,d}")
                     : ModelSet::all(u);
  Profile e = profile_of(bases);
  auto inputs = bases;
  inputs.push_back({"mu", mu});
  check_inputs_closed(b, beta, inputs);

  auto cols = distance_columns(bases, hamming());
  cols.push_back(aggregate_column("GMax", e, hamming(), Aggregator::GMax));
  if (krom) {
    b.table("distances (hamming)", u, mu, cols,
            {{"{}", {"0", "2", "(2, 0)"}},
             {"{a}", {"1", "1", "(1, 1)"}},
             {"{b}", {"1", "1", "(1, 1)"}},
             {"{c}", {"1", "1", "(1, 1)"}},
             {"{d}", {"1", "1", "(1, 1)"}},
             {"{a,b}", {"2", "0", "(2, 0)"}},
             {"{c,d}", {"2", "0", "(2, 0)"}}});
  } else {
    b.table("distances (hamming)", u, mu, cols,
            {{"{}", {"0", "2", "(2, 0)"}},
             {"{a}", {"1", "1", "(1, 1)"}},
             {"{b}", {"1", "1", "(1, 1)"}},
             {"{a,b}", {"2", "0", "(2, 0)"}}});
  }

  MergeOperator base = distance_operator(hamming(), Aggregator::GMax);
  ModelSet m = base(e, mu);
  b.check("merge " + base.label, krom ? "{a}, {b}, {c}, {d}" : "{a}, {b}",
          m.to_string());
  b.check("merge closed under " + beta.name(), "no", yes_no(is_closed(beta, m)));
  MergeOperator cl = refined_operator(base, ClosureRefinement{beta});
  ModelSet refined = cl(e, mu);
  b.check(cl.label + " result",
          krom ? "{}, {a}, {b}, {c}, {d}" : "{}, {a}, {b}",
          refined.to_string());
  b.check(cl.label + " #(result,E)", "1",
          std::to_string(cardintersection(refined, e)));
  b.check(cl.label + " IC4", "violated",
          verdict(PostulateId::IC4, cl, PostulateCase{{e}, {mu}}, &b));
  return b.done();
}

FixtureReport prop6() {
  Builder b("prop6-fairness",
            "Drastic closure and lex/closure refinements are fair");
  const BooleanFn& land = BooleanFn::conjunction();

  // #(M,E) = 0 under the drastic distance forces M = mod(mu).
  auto u = Universe::make({"a", "b"});
  std::vector<NamedSet> bases{{"K1", sets(u, "{a}")}, {"K2", sets(u, "{b}")}};
  ModelSet mu = sets(u, "{} {a,b}");
  Profile e = profile_of(bases);
  auto cols = distance_columns(bases, drastic());
  cols.push_back(aggregate_column("Sigma", e, drastic(), Aggregator::Sum));
  cols.push_back(aggregate_column("GMax", e, drastic(), Aggregator::GMax));
  b.table("distances (drastic)", u, mu, cols,
          {{"{}", {"1", "1", "2", "(1, 1)"}}, {"{a,b}", {"1", "1", "2", "(1, 1)"}}});
  for (auto f : {Aggregator::Sum, Aggregator::GMax}) {
    MergeOperator base = distance_operator(drastic(), f);
    MergeOperator cl = refined_operator(base, ClosureRefinement{land});
    ModelSet m = base(e, mu);
    ModelSet r = cl(e, mu);
    b.check("merge " + base.label, "{}, {a,b}", m.to_string());
    b.check("#(merge " + base.label + ",E)", "0",
            std::to_string(cardintersection(m, e)));
    b.check(cl.label + " result", "{}, {a,b}", r.to_string());
    b.check(cl.label + " #(result,E)", "0",
            std::to_string(cardintersection(r, e)));
  }

  // lex/closure keeps #(.,E) = 0 where the plain closure does not.
  auto u7 = Universe::make({"a", "b", "c", "d", "e", "f", "g"});
  Profile e7{sets(u7, "{a} {a,b} {a,d} {a,f}"), sets(u7, "{a,b,c,d,e,f,g}")};
  ModelSet mu7 = sets(u7, "{a} {a,b,c} {a,d,e} {a,f,g}");
  MergeOperator hs = distance_operator(hamming(), Aggregator::Sum);
  MergeOperator lexcl = refined_operator(hs, LexClosureRefinement{land, {}});
  ModelSet r7 = lexcl(e7, mu7);
  b.check("seven-atom instance: " + lexcl.label + " result", "{a,b,c}",
          r7.to_string());
  b.check("seven-atom instance: " + lexcl.label + " #(result,E)", "0",
          std::to_string(cardintersection(r7, e7)));

  // Exhaustive two-atom spaces.
  for (auto frag : {FragmentChoice::Horn, FragmentChoice::Krom}) {
    const BooleanFn beta = fragment_of(frag)->beta;
    SearchSpace space;
    space.atoms = 2;
    space.fragment = frag;
    space.max_profile_size = 2;
    auto instances = enumerate_instances(space);
    std::vector<std::pair<MergeOperator, MergeOperator>> ops;
    for (auto f : {Aggregator::Sum, Aggregator::GMax}) {
      MergeOperator dd = distance_operator(drastic(), f);
      ops.emplace_back(dd, refined_operator(dd, ClosureRefinement{beta}));
      for (const auto* d : {&hamming(), &drastic()}) {
        MergeOperator base = distance_operator(*d, f);
        ops.emplace_back(base,
                         refined_operator(base, LexClosureRefinement{beta, {}}));
      }
    }
    for (const auto& [base, op] : ops) {
      auto report = is_fair(base, op, instances);
      b.check(to_string(frag) + " n=2: fairness violations of " + op.label,
              "0", std::to_string(report.violations.size()));
    }
  }
  return b.done();
}

FixtureReport prop8_ic5() {
  Builder b("prop8-ic5", "Closure-based refinements violate IC5");
  auto u = Universe::make({"a", "b", "c"});
  std::vector<NamedSet> bases{{"K1", sets(u, "{a} {a,b} {a,c}")},
                              {"K2", sets(u, "{b} {a,b} {b,c}")},
                              {"K3", sets(u, "{c} {a,c} {b,c}")},
                              {"K4", sets(u, "{} {b}")}};
  ModelSet mu = sets(u, "{} {a} {b} {c}");
  Profile e1 = profile_of({bases[0], bases[1], bases[2]});
  Profile e2 = profile_of({bases[3]});
  Profile e12 = join(e1, e2);
  auto inputs = bases;
  inputs.push_back({"mu", mu});
  check_inputs_closed(b, BooleanFn::conjunction(), inputs);
  check_inputs_closed(b, BooleanFn::majority3(), inputs);

  auto cols = distance_columns(bases, hamming());
  cols.push_back(aggregate_column("E1 Sigma", e1, hamming(), Aggregator::Sum));
  cols.push_back(aggregate_column("E1+E2 Sigma", e12, hamming(), Aggregator::Sum));
  b.table("distances (hamming)", u, mu, cols,
          {{"{}", {"1", "1", "1", "0", "3", "3"}},
           {"{a}", {"0", "1", "1", "1", "2", "3"}},
           {"{b}", {"1", "0", "1", "0", "2", "2"}},
           {"{c}", {"1", "1", "0", "1", "2", "3"}}});

  MergeOperator cl = refined_operator(distance_operator(hamming(), Aggregator::Sum),
                                      ClosureRefinement{BooleanFn::conjunction()});
  b.check(cl.label + " out(E1)", "{}, {a}, {b}, {c}", cl(e1, mu).to_string());
  b.check(cl.label + " out(E2)", "{}, {b}", cl(e2, mu).to_string());
  b.check(cl.label + " out(E1+E2)", "{b}", cl(e12, mu).to_string());

  PostulateCase c{{e1, e2}, {mu}};
  bool traced = false;
  for (const auto* beta : {&BooleanFn::conjunction(), &BooleanFn::majority3()}) {
    for (auto f : {Aggregator::Sum, Aggregator::GMax}) {
      MergeOperator base = distance_operator(hamming(), f);
      for (RefinementKind kind :
           {RefinementKind{ClosureRefinement{*beta}},
            RefinementKind{LexClosureRefinement{*beta, {}}}}) {
        MergeOperator op = refined_operator(base, kind);
        b.check(op.label + " IC5", "violated",
                verdict(PostulateId::IC5, op, c, traced ? nullptr : &b));
        traced = true;
      }
    }
    MergeOperator dcl = refined_operator(
        distance_operator(drastic(), Aggregator::Sum), ClosureRefinement{*beta});
    b.check(dcl.label + " IC5", "violated", verdict(PostulateId::IC5, dcl, c));
  }
  return b.done();
}

FixtureReport prop8_ic7(bool krom) {
  Builder b(krom ? "prop8-ic7-krom" : "prop8-ic7-horn",
            std::string("Closure-based refinements violate IC7 in ") +
                (krom ? "Krom" : "Horn"));
  const BooleanFn& beta =
      krom ? BooleanFn::majority3() : BooleanFn::conjunction();
  auto u = krom ? Universe::make({"a", "b", "c"}) : Universe::make({"a", "b"});
  std::vector<NamedSet> bases =
      krom ? std::vector<NamedSet>{{"K1", sets(u, "{a}")},
                                   {"K2", sets(u, "{b}")},
                                   {"K3", sets(u, "{c}")},
                                   {"K4", sets(u, "{a,b} {a,c}")},
                                   {"K5", sets(u, "{a,b} {b,c}")}}
           : std::vector<NamedSet>{{"K1", sets(u, "{a}")},
                                   {"K2", sets(u, "{b}")},
                                   {"K3", sets(u, "{a,b}")}};
  ModelSet mu1 = krom ? sets(u, "{} {a} {b} {c}") : sets(u, "{} {a} {b}");
  ModelSet mu2 = sets(u, "{} {a}");
  Profile e = profile_of(bases);
  auto inputs = bases;
  inputs.push_back({"mu1", mu1});
  inputs.push_back({"mu2", mu2});
  check_inputs_closed(b, beta, inputs);

  auto cols = distance_columns(bases, hamming());
  cols.push_back(aggregate_column("Sigma", e, hamming(), Aggregator::Sum));
  if (krom) {
    b.table("distances (hamming)", u, mu1, cols,
            {{"{}", {"1", "1", "1", "2", "2", "7"}},
             {"{a}", {"0", "2", "2", "1", "1", "6"}},
             {"{b}", {"2", "0", "2", "1", "1", "6"}},
             {"{c}", {"2", "2", "0", "1", "1", "6"}}});
  } else {
    b.table("distances (hamming)", u, mu1, cols,
            {{"{}", {"1", "1", "2", "4"}},
             {"{a}", {"0", "2", "1", "3"}},
             {"{b}", {"2", "0", "1", "3"}}});
  }

  MergeOperator base = distance_operator(hamming(), Aggregator::Sum);
  MergeOperator cl = refined_operator(base, ClosureRefinement{beta});
  b.check("merge " + base.label + " out(mu1)",
          krom ? "{a}, {b}, {c}" : "{a}, {b}", base(e, mu1).to_string());
  ModelSet r1 = cl(e, mu1);
  b.check(cl.label + " out(mu1)", krom ? "{}, {a}, {b}, {c}" : "{}, {a}, {b}",
          r1.to_string());
  b.check(cl.label + " out(mu1) & mu2", "{}, {a}", r1.intersect(mu2).to_string());
  b.check(cl.label + " out(mu1 & mu2)", "{a}",
          cl(e, mu1.intersect(mu2)).to_string());

  PostulateCase c{{e}, {mu1, mu2}};
  bool traced = false;
  for (const auto* d : {&hamming(), &drastic()}) {
    for (auto f : {Aggregator::Sum, Aggregator::GMax}) {
      for (RefinementKind kind : {RefinementKind{ClosureRefinement{beta}},
                                  RefinementKind{LexClosureRefinement{beta, {}}}}) {
        MergeOperator op = refined_operator(distance_operator(*d, f), kind);
        b.check(op.label + " IC7", "violated",
                verdict(PostulateId::IC7, op, c, traced ? nullptr : &b));
        traced = true;
      }
    }
  }
  return b.done();
}

FixtureReport prop9() {
  Builder b("prop9-ic4",
            "Closure refinement of Hamming-sum satisfies IC4");
  for (bool krom : {false, true}) {
    const BooleanFn& beta =
        krom ? BooleanFn::majority3() : BooleanFn::conjunction();
    auto u = krom ? Universe::make({"a", "b", "c", "d"})
                  : Universe::make({"a", "b"});
    std::vector<NamedSet> bases{
        {"K1", sets(u, "{}")},
        {"K2", krom ? sets(u, "{a,b} {c,d}") : sets(u, "{a,b}")}};
    ModelSet mu = krom ? sets(u, "{} {a} {b} {c} {d} {a,b} {c,d}")
                       : ModelSet::all(u);
    Profile e = profile_of(bases);
    const std::string tag = krom ? "krom" : "horn";

    auto cols = distance_columns(bases, hamming());
    cols.push_back(aggregate_column("Sigma", e, hamming(), Aggregator::Sum));
    if (krom) {
      b.table(tag + " distances (hamming)", u, mu, cols,
              {{"{}", {"0", "2", "2"}},
               {"{a}", {"1", "1", "2"}},
               {"{b}", {"1", "1", "2"}},
               {"{c}", {"1", "1", "2"}},
               {"{d}", {"1", "1", "2"}},
               {"{a,b}", {"2", "0", "2"}},
               {"{c,d}", {"2", "0", "2"}}});
    } else {
      b.table(tag + " distances (hamming)", u, mu, cols,
              {{"{}", {"0", "2", "2"}},
               {"{a}", {"1", "1", "2"}},
               {"{b}", {"1", "1", "2"}},
               {"{a,b}", {"2", "0", "2"}}});
    }
    MergeOperator cl = refined_operator(
        distance_operator(hamming(), Aggregator::Sum), ClosureRefinement{beta});
    ModelSet r = cl(e, mu);
    b.check(tag + " " + cl.label + " result", mu.to_string(), r.to_string());
    b.check(tag + " " + cl.label + " #(result,E)", "2",
            std::to_string(cardintersection(r, e)));
    b.check(tag + " " + cl.label + " IC4", "holds",
            verdict(PostulateId::IC4, cl, PostulateCase{{e}, {mu}}));

    SearchSpace space;
    space.atoms = 2;
    space.fragment = krom ? FragmentChoice::Krom : FragmentChoice::Horn;
    space.postulates = {PostulateId::IC4};
    b.check(tag + " n=2 exhaustive IC4 witnesses for " + cl.label, "0",
            std::to_string(search(space, cl).size()));
    // Every two-atom set is maj3-closed, so the contrast only exists for Horn.
    if (krom) continue;
    MergeOperator gcl = refined_operator(
        distance_operator(hamming(), Aggregator::GMax), ClosureRefinement{beta});
    space.max_witnesses = 1;
    b.check(tag + " n=2 exhaustive IC4 witness exists for " + gcl.label, "yes",
            yes_no(!search(space, gcl).empty()));
  }
  return b.done();
}

FixtureReport prop10() {
  Builder b("prop10-nonfair", "Closure refinement of Hamming-sum is not fair");
  auto u = Universe::make({"a", "b", "c", "d", "e", "f", "g"});
  std::vector<NamedSet> bases{{"K1", sets(u, "{a} {a,b} {a,d} {a,f}")},
                              {"K2", sets(u, "{a,b,c,d,e,f,g}")}};
  ModelSet mu = sets(u, "{a} {a,b,c} {a,d,e} {a,f,g}");
  Profile e = profile_of(bases);
  auto inputs = bases;
  inputs.push_back({"mu", mu});
  check_inputs_closed(b, BooleanFn::conjunction(), inputs);
  check_inputs_closed(b, BooleanFn::majority3(), inputs);

  auto cols = distance_columns(bases, hamming());
  cols.push_back(aggregate_column("Sigma", e, hamming(), Aggregator::Sum));
  b.table("distances (hamming)", u, mu, cols,
          {{"{a}", {"0", "6", "6"}},
           {"{a,b,c}", {"1", "4", "5"}},
           {"{a,d,e}", {"1", "4", "5"}},
           {"{a,f,g}", {"1", "4", "5"}}});

  MergeOperator base = distance_operator(hamming(), Aggregator::Sum);
  ModelSet m = base(e, mu);
  b.check("merge " + base.label, "{a,b,c}, {a,d,e}, {a,f,g}", m.to_string());
  b.check("#(merge,E)", "0", std::to_string(cardintersection(m, e)));
  std::vector<Instance> one{Instance{e, mu}};
  for (const auto* beta : {&BooleanFn::conjunction(), &BooleanFn::majority3()}) {
    MergeOperator cl = refined_operator(base, ClosureRefinement{*beta});
    ModelSet r = cl(e, mu);
    b.check(cl.label + " result", "{a}, {a,b,c}, {a,d,e}, {a,f,g}", r.to_string());
    b.check(cl.label + " #(result,E)", "1", std::to_string(cardintersection(r, e)));
    auto report = is_fair(base, cl, one);
    b.check(cl.label + " fair", "no", yes_no(report.fair()));
  }
  return b.done();
}

// Picks the second profile used against a refined result of the IC6 instance,
// following the case analysis on which of {}, {a}, {b}, {a,b} survive.
std::pair<std::string, ModelSet> ic6_partner(const ModelSet& refined,
                                             const std::vector<NamedSet>& b) {
  const auto& u = refined.universe();
  if (refined.contains(Bits{0})) return {"K4", sets(u, "{}")};
  const Bits a = 1, bb = 2, ab = 3;
  const bool has_a = refined.contains(a), has_b = refined.contains(bb);
  const bool has_ab = refined.contains(ab);
  if (has_a && has_ab) return {b[1].name, b[1].models};   // {a},{a,b} -> K2
  if (has_b && has_ab) return {b[0].name, b[0].models};   // {b},{a,b} -> K1
  if (has_b) return {b[1].name, b[1].models};             // {b} -> K2
  return {b[0].name, b[0].models};                        // {a} or {a,b} -> K1
}

FixtureReport prop11() {
  Builder b("prop11-ic6", "Every refinement of Hamming-GMax violates IC6");
  auto u = Universe::make({"a", "b"});
  const BooleanFn& land = BooleanFn::conjunction();
  std::vector<NamedSet> bases{{"K1", sets(u, "{a} {a,b}")},
                              {"K2", sets(u, "{b} {a,b}")},
                              {"K3", sets(u, "{} {a} {b}")}};
  ModelSet mu = ModelSet::all(u);
  Profile e1 = profile_of(bases);
  auto inputs = bases;
  inputs.push_back({"mu", mu});
  inputs.push_back({"K4", sets(u, "{}")});
  check_inputs_closed(b, land, inputs);

  auto cols = distance_columns(bases, hamming());
  cols.push_back(aggregate_column("GMax", e1, hamming(), Aggregator::GMax));
  b.table("distances (hamming)", u, mu, cols,
          {{"{}", {"1", "1", "0", "(1, 1, 0)"}},
           {"{a}", {"0", "1", "0", "(1, 0, 0)"}},
           {"{b}", {"1", "0", "0", "(1, 0, 0)"}},
           {"{a,b}", {"0", "0", "1", "(1, 0, 0)"}}});

  MergeOperator base = distance_operator(hamming(), Aggregator::GMax);
  b.check("merge " + base.label, "{a}, {b}, {a,b}", base(e1, mu).to_string());

  struct Branch {
    RefinementKind kind;
    std::string out;
    std::string partner;
  };
  std::vector<Branch> branches{
      {ClosureRefinement{land}, "{}, {a}, {b}, {a,b}", "K4"},
      {LexRefinement{land, {}}, "{a}", "K1"},
      {LexClosureRefinement{land, {}}, "{}, {a}, {b}, {a,b}", "K4"},
      {CustomRefinement{upset_of_lex_min_mapping()}, "{a}, {a,b}", "K2"},
      {CustomRefinement{lex_max_mapping(land)}, "{a,b}", "K1"}};

  MappingBounds bounds{u, 2};
  for (const auto& br : branches) {
    MergeOperator op = refined_operator(base, br.kind);
    if (const auto* custom = std::get_if<CustomRefinement>(&br.kind))
      b.check(op.label + " is a valid and-mapping", "yes",
              yes_no(validate_mapping(custom->mapping, bounds).ok()));
    ModelSet out = op(e1, mu);
    b.check(op.label + " out(E1)", br.out, out.to_string());
    auto [name, k] = ic6_partner(out, bases);
    b.check(op.label + " second profile", br.partner, name);
    PostulateCase c{{e1, Profile{k}}, {mu}};
    b.check(op.label + " IC6", "violated", verdict(PostulateId::IC6, op, c, &b));
  }
  return b.done();
}

using FixtureFn = std::function<FixtureReport()>;

const std::vector<std::pair<std::string, FixtureFn>>& catalog() {
  static const std::vector<std::pair<std::string, FixtureFn>> entries{
      {"ex1", ex1},
      {"ex3", ex3},
      {"prop3-horn", [] { return prop3(false); }},
      {"prop3-krom", [] { return prop3(true); }},
      {"prop4-horn", [] { return prop4(false); }},
      {"prop4-krom", [] { return prop4(true); }},
      {"prop6-fairness", prop6},
      {"prop8-ic5", prop8_ic5},
      {"prop8-ic7-horn", [] { return prop8_ic7(false); }},
      {"prop8-ic7-krom", [] { return prop8_ic7(true); }},
      {"prop9-ic4", prop9},
      {"prop10-nonfair", prop10},
      {"prop11-ic6", prop11}};
  return entries;
}

std::string pad(const std::string& s, std::size_t width) {
  // Pads by code points so the table stays aligned.
  std::size_t len = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++len;
  return s + std::string(width > len ? width - len : 0, ' ');
}

}  // namespace

std::vector<std::string> fixture_catalog() {
  std::vector<std::string> ids;
  for (const auto& [id, fn] : catalog()) ids.push_back(id);
  return ids;
}

FixtureReport reproduce(std::string_view fixture_id) {
  for (const auto& [id, fn] : catalog())
    if (id == fixture_id) return fn();
  throw UnknownFixture(std::string(fixture_id));
}

bool FixtureReport::passed() const {
  for (const auto& t : tables)
    for (const auto& row : t.rows)
      for (const auto& cell : row)
        if (!cell.pass()) return false;
  return std::all_of(checks.begin(), checks.end(),
                     [](const FixtureCheck& c) { return c.cell.pass(); });
}

std::size_t FixtureReport::cell_count() const {
  std::size_t n = checks.size();
  for (const auto& t : tables)
    for (const auto& row : t.rows) n += row.size();
  return n;
}

std::string FixtureReport::render_text() const {
  std::string out = id + ": " + title + "\n";
  for (const auto& t : tables) {
    out += "\n" + t.title + "\n";
    std::vector<std::size_t> widths(t.columns.size() + 1, 0);
    widths[0] = 4;
    for (const auto& l : t.row_labels) widths[0] = std::max(widths[0], l.size());
    std::vector<std::vector<std::string>> shown(t.rows.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r)
      for (std::size_t c = 0; c < t.rows[r].size(); ++c) {
        const auto& cell = t.rows[r][c];
        shown[r].push_back(cell.pass() ? cell.actual
                                       : cell.actual + " [expected " +
                                             cell.expected + "]");
      }
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      widths[c + 1] = t.columns[c].size();
      for (const auto& row : shown) widths[c + 1] = std::max(widths[c + 1], row[c].size());
    }
    std::string line = pad("2^U", widths[0]);
    for (std::size_t c = 0; c < t.columns.size(); ++c)
      line += " | " + pad(t.columns[c], widths[c + 1]);
    out += line + "\n";
    std::size_t rule = 0;
    for (auto w : widths) rule += w + 3;
    out += std::string(rule - 3, '-') + "\n";
    for (std::size_t r = 0; r < shown.size(); ++r) {
      line = pad(t.row_labels[r], widths[0]);
      for (std::size_t c = 0; c < shown[r].size(); ++c)
        line += " | " + pad(shown[r][c], widths[c + 1]);
      out += line + "\n";
    }
  }
  out += "\n";
  for (const auto& c : checks) {
    out += (c.cell.pass() ? "[ok]   " : "[FAIL] ") + c.label + ": " + c.cell.actual;
    if (!c.cell.pass()) out += " (expected " + c.cell.expected + ")";
    out += "\n";
  }
  if (!notes.empty()) {
    out += "\ntrace:\n";
    for (const auto& n : notes) out += "  " + n + (n.ends_with('\n') ? "" : "\n");
  }
  out += "\n" + std::string(passed() ? "PASS" : "FAIL") + " (" +
         std::to_string(cell_count()) + " cells)\n";
  return out;
}

std::string FixtureReport::render_machine() const {
  std::string out;
  auto record = [&](const std::string& kind, const std::string& where,
                    const FixtureCell& cell) {
    out += id + "\t" + kind + "\t" + where + "\t" + cell.expected + "\t" +
           cell.actual + "\t" + (cell.pass() ? "pass" : "fail") + "\n";
  };
  for (const auto& t : tables)
    for (std::size_t r = 0; r < t.rows.size(); ++r)
      for (std::size_t c = 0; c < t.rows[r].size(); ++c)
        record("cell", t.title + "/" + t.row_labels[r] + "/" + t.columns[c],
               t.rows[r][c]);
  for (const auto& c : checks) record("check", c.label, c.cell);
  out += id + "\tverdict\t" + (passed() ? "pass" : "fail") + "\n";
  return out;
}

}  // namespace fragmerge
