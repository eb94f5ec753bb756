#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "fragmerge/formula.hpp"
#include "fragmerge/postulates.hpp"
#include "fragmerge/refine.hpp"

namespace fragmerge::cli {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_atoms(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == ',') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

// Raised for malformed problem files; carries the line number.
class ProblemError : public Error {
 public:
  ProblemError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what) {}
};

CountingDistance parse_distance(const std::string& text) {
  if (text == "hamming") return CountingDistance::hamming();
  if (text == "drastic") return CountingDistance::drastic();
  if (text.rfind("table:", 0) == 0) {
    std::vector<std::uint64_t> g;
    for (const auto& item : split_atoms(text.substr(6))) {
      try {
        std::size_t used = 0;
        g.push_back(std::stoull(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::logic_error&) {
        throw InvalidDistance("bad distance table entry '" + item + "'");
      }
    }
    return CountingDistance::table(std::move(g));
  }
  throw InvalidDistance("unknown distance '" + text + "'");
}

Aggregator parse_aggregator(const std::string& text) {
  if (text == "sigma") return Aggregator::Sum;
  if (text == "gmax") return Aggregator::GMax;
  throw Error("unknown aggregator '" + text + "'");
}

enum class RefinementChoice { None, Closure, Lex, LexClosure };

RefinementChoice parse_refinement(const std::string& text) {
  if (text == "none") return RefinementChoice::None;
  if (text == "closure") return RefinementChoice::Closure;
  if (text == "lex") return RefinementChoice::Lex;
  if (text == "lex-closure") return RefinementChoice::LexClosure;
  throw Error("unknown refinement '" + text + "'");
}

FragmentChoice require_fragment(const std::string& text) {
  auto f = parse_fragment(text);
  if (!f) throw Error("unknown fragment '" + text + "'");
  return *f;
}

std::optional<RefinementKind> make_refinement(RefinementChoice r,
                                              FragmentChoice f,
                                              const LexOrder& order) {
  if (r == RefinementChoice::None) return std::nullopt;
  auto fragment = fragment_of(f);
  if (!fragment) throw Error("a refinement needs --fragment horn or krom");
  switch (r) {
    case RefinementChoice::Closure:
      return ClosureRefinement{fragment->beta};
    case RefinementChoice::Lex:
      return LexRefinement{fragment->beta, order};
    case RefinementChoice::LexClosure:
      return LexClosureRefinement{fragment->beta, order};
    case RefinementChoice::None:
      break;
  }
  return std::nullopt;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Problem-file and flag errors share exit code 2; inconsistent bases get 3.
int report_error(const std::exception& e, std::ostream& err) {
  err << "error: " << e.what() << "\n";
  if (dynamic_cast<const InconsistentBase*>(&e)) return kInconsistentBase;
  return kUsage;
}

// ---------------------------------------------------------------------------

struct MergeArgs {
  std::string file;
  std::string distance = "hamming";
  std::string aggregator = "sigma";
  std::string refinement = "none";
  std::string fragment = "none";
  std::string lex_order;
  std::string format = "text";
};

int cmd_merge(const MergeArgs& a, std::ostream& out, std::ostream& err) {
  std::optional<ProblemFile> parsed;
  std::optional<RefinementKind> kind;
  std::optional<Fragment> fragment;
  CountingDistance d = CountingDistance::hamming();
  Aggregator f = Aggregator::Sum;
  try {
    parsed = parse_problem(read_file(a.file));
    d = parse_distance(a.distance);
    f = parse_aggregator(a.aggregator);
    const FragmentChoice fc = require_fragment(a.fragment);
    fragment = fragment_of(fc);
    LexOrder order;
    if (!a.lex_order.empty())
      order = LexOrder(parse_interpretation_list(*parsed->universe, a.lex_order));
    kind = make_refinement(parse_refinement(a.refinement), fc, order);
  } catch (const Error& e) {
    return report_error(e, err);
  }

  const ProblemFile& problem = *parsed;
  const bool machine = a.format == "machine";
  const Profile e = problem.profile();
  ModelSet merged(problem.universe);
  try {
    merged = merge(e, problem.constraint, d, f);
  } catch (const Error& ex) {
    return report_error(ex, err);
  }
  const std::string op_label = d.name() + "," + to_string(f);
  auto print_set = [&](const std::string& what, const std::string& label,
                       const ModelSet& m) {
    if (machine) {
      out << what << "\t" << label << "\t" << m.to_string() << "\n"
          << "count\t" << what << "\t" << cardintersection(m, e) << "\n";
    } else {
      out << what << " (" << label << "): " << m.to_string() << "\n"
          << "#(" << what << ", E) = " << cardintersection(m, e) << "\n";
    }
  };
  print_set("merged", op_label, merged);

  ModelSet result = merged;
  if (kind) {
    result = refine(*kind, merged, e, problem.constraint);
    print_set("refined", label_of(*kind), result);
  }

  if (fragment) {
    try {
      Formula phi = synthesize(result, *fragment, {.minimize = true});
      if (machine)
        out << "formula\t" << fragment->name << "\t" << phi.to_string() << "\n";
      else
        out << "formula (" << fragment->name << "): " << phi.to_string() << "\n";
    } catch (const NotClosed& ex) {
      err << "error: result is not expressible in " << fragment->name << ": "
          << ex.what() << "\n";
      return kNotExpressible;
    }
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct CheckArgs {
  std::string op = "hamming,sigma,closure";
  std::string fragment = "horn";
  std::string postulates = "ic0-ic8";
  std::size_t atoms = 2;
  std::size_t max_profile = 2;
  std::size_t max_witnesses = 0;
  unsigned threads = 0;
  std::string format = "text";
};

int cmd_check(const CheckArgs& a, std::ostream& out, std::ostream& err) {
  SearchSpace space;
  std::optional<MergeOperator> op;
  try {
    // The distance may itself contain commas (table:1,2), so split around
    // the aggregator token.
    auto parts = split_atoms(a.op);
    auto agg = std::find_if(parts.begin(), parts.end(), [](const std::string& p) {
      return p == "sigma" || p == "gmax";
    });
    if (agg == parts.begin() || agg == parts.end() || parts.end() - agg > 2)
      throw Error("--op expects distance,aggregator[,refinement]");
    std::string distance = parts.front();
    for (auto it = parts.begin() + 1; it != agg; ++it) distance += "," + *it;
    MergeOperator base =
        distance_operator(parse_distance(distance), parse_aggregator(*agg));
    space.fragment = require_fragment(a.fragment);
    auto kind = make_refinement(
        parse_refinement(agg + 1 != parts.end() ? *(agg + 1) : "none"),
        space.fragment, {});
    op = kind ? refined_operator(base, *kind) : base;
    space.postulates = parse_postulate_list(a.postulates);
    space.atoms = a.atoms;
    space.max_profile_size = a.max_profile;
    space.max_witnesses = a.max_witnesses;
    space.threads = a.threads;
    // Validates the caps before any work is done.
    count_instances(space);
  } catch (const Error& e) {
    return report_error(e, err);
  }

  std::vector<Witness> witnesses;
  try {
    witnesses = search(space, *op);
  } catch (const Error& e) {
    return report_error(e, err);
  }
  const bool machine = a.format == "machine";
  for (const auto& w : witnesses) {
    if (machine)
      out << "witness\t" << to_string(w.postulate) << "\t" << w.instance.encode()
          << "\n";
    else
      out << w.render() << "\n";
  }
  if (machine) {
    out << "summary\t" << op->label << "\t" << to_string(space.fragment) << "\t"
        << witnesses.size() << "\n";
  } else {
    out << witnesses.size() << " witness(es) for " << op->label << " over "
        << to_string(space.fragment) << ", " << space.atoms << " atoms, profiles of up to "
        << space.max_profile_size << " bases\n";
  }
  return witnesses.empty() ? kOk : kWitnessOrMismatch;
}

// ---------------------------------------------------------------------------

// Atoms in order of first appearance.
std::vector<std::string> atoms_in(std::string_view text) {
  std::vector<std::string> atoms;
  for (std::size_t i = 0; i < text.size();) {
    if (text[i] >= 'a' && text[i] <= 'z') {
      std::size_t j = i;
      while (j < text.size() && ((text[j] >= 'a' && text[j] <= 'z') ||
                                 (text[j] >= '0' && text[j] <= '9') ||
                                 text[j] == '_'))
        ++j;
      std::string name(text.substr(i, j - i));
      if (std::find(atoms.begin(), atoms.end(), name) == atoms.end())
        atoms.push_back(std::move(name));
      i = j;
    } else {
      ++i;
    }
  }
  return atoms;
}

struct ClassifyArgs {
  std::string formula;
  std::string atoms;
  std::string format = "text";
};

int cmd_classify(const ClassifyArgs& a, std::ostream& out, std::ostream& err) {
  try {
    auto names = a.atoms.empty() ? atoms_in(a.formula) : split_atoms(a.atoms);
    if (names.empty()) names.push_back("a");
    auto u = Universe::make(names);
    Formula phi = parse(a.formula, u);
    Classification c = classify(phi);
    ModelSet m = models(phi);
    const bool and_closed = is_closed(BooleanFn::conjunction(), m);
    const bool maj_closed = is_closed(BooleanFn::majority3(), m);
    if (a.format == "machine") {
      out << "verdict\t" << to_string(c.verdict) << "\n"
          << "models\t" << m.to_string() << "\n"
          << "closed\tand\t" << (and_closed ? "yes" : "no") << "\n"
          << "closed\tmaj3\t" << (maj_closed ? "yes" : "no") << "\n";
    } else {
      out << "formula: " << phi.to_string() << "\n"
          << "syntactic class: " << to_string(c.verdict) << "\n"
          << "models: " << m.to_string() << "\n"
          << "closed under and: " << (and_closed ? "yes" : "no") << "\n"
          << "closed under maj3: " << (maj_closed ? "yes" : "no") << "\n";
    }
  } catch (const Error& e) {
    return report_error(e, err);
  }
  return kOk;
}

struct ClosureArgs {
  std::string models;
  std::string atoms;
  std::string fn = "and";
};

int cmd_closure(const ClosureArgs& a, std::ostream& out, std::ostream& err) {
  try {
    auto names = a.atoms.empty() ? atoms_in(a.models) : split_atoms(a.atoms);
    if (names.empty()) names.push_back("a");
    auto u = Universe::make(names);
    const BooleanFn* beta = nullptr;
    if (a.fn == "and") beta = &BooleanFn::conjunction();
    else if (a.fn == "maj3") beta = &BooleanFn::majority3();
    else throw Error("unknown function '" + a.fn + "'");
    ModelSet m(u, parse_interpretation_list(*u, a.models));
    ModelSet cl = closure(*beta, m);
    out << "closure under " << beta->name() << ": " << cl.to_string() << "\n";
    if (auto w = closure_witness(*beta, m)) {
      out << "not closed:";
      for (Bits b : *w) out << " " << render_interpretation(*u, b);
      out << " -> " << render_interpretation(*u, beta->apply(*w, u->size()))
          << "\n";
    } else {
      out << "already closed\n";
    }
  } catch (const Error& e) {
    return report_error(e, err);
  }
  return kOk;
}

int cmd_reproduce(const std::string& id, bool list, const std::string& format,
                  std::ostream& out, std::ostream& err) {
  if (list) {
    for (const auto& name : fixture_catalog()) out << name << "\n";
    return kOk;
  }
  try {
    FixtureReport r = reproduce(id);
    out << (format == "machine" ? r.render_machine() : r.render_text());
    return r.passed() ? kOk : kWitnessOrMismatch;
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

}  // namespace

Profile ProblemFile::profile() const {
  std::vector<Base> out;
  for (const auto& b : bases) out.push_back(b.base);
  return Profile(std::move(out));
}

ProblemFile parse_problem(std::string_view text) {
  struct {
    UniversePtr universe;
    std::vector<NamedBase> bases;
  } p;
  struct Pending {
    std::string name;
    ModelSet models;
    std::vector<Formula> source;
  };
  std::vector<Pending> pending;
  std::optional<ModelSet> constraint;

  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw ProblemError(line_no, "expected 'key: value'");
    const std::string key = trim(std::string_view(line).substr(0, colon));
    const std::string value = trim(std::string_view(line).substr(colon + 1));

    if (key == "atoms") {
      if (p.universe) throw ProblemError(line_no, "atoms declared twice");
      try {
        p.universe = Universe::make(split_atoms(value));
        require_enumerable(*p.universe);
      } catch (const Error& e) {
        throw ProblemError(line_no, e.what());
      }
      continue;
    }
    if (!p.universe) throw ProblemError(line_no, "'atoms:' must come first");

    try {
      if (key == "constraint") {
        ModelSet m = models(parse(value, p.universe));
        constraint = constraint ? constraint->intersect(m) : m;
      } else if (key.rfind("base", 0) == 0 && key.size() > 4 &&
                 (key[4] == ' ' || key[4] == '\t')) {
        const std::string name = trim(std::string_view(key).substr(4));
        ModelSet m(p.universe);
        std::optional<Formula> phi;
        if (value.rfind("models", 0) == 0) {
          m = ModelSet(p.universe, parse_interpretation_list(
                                       *p.universe, value.substr(6)));
        } else {
          phi = parse(value, p.universe);
          m = models(*phi);
        }
        auto it = std::find_if(pending.begin(), pending.end(),
                               [&](const Pending& b) { return b.name == name; });
        if (it == pending.end()) {
          pending.push_back({name, m, {}});
          it = pending.end() - 1;
        } else {
          it->models = it->models.intersect(m);
        }
        if (phi) it->source.push_back(*phi);
      } else {
        throw ProblemError(line_no, "unknown key '" + key + "'");
      }
    } catch (const ProblemError&) {
      throw;
    } catch (const InconsistentBase&) {
      throw;
    } catch (const Error& e) {
      throw ProblemError(line_no, e.what());
    }
  }
  if (!p.universe) throw ProblemError(line_no, "missing 'atoms:' line");
  if (pending.empty()) throw ProblemError(line_no, "no bases");
  for (auto& b : pending) {
    if (b.models.empty())
      throw InconsistentBase("base '" + b.name + "' has no models");
    p.bases.push_back({b.name, Base(b.models, std::move(b.source))});
  }
  ModelSet mu = constraint ? *constraint : ModelSet::all(p.universe);
  return ProblemFile{p.universe, std::move(p.bases), std::move(mu)};
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Belief merging in propositional fragments"};
  app.name("fragmerge");
  app.require_subcommand(1);

  MergeArgs merge_args;
  auto* merge_cmd = app.add_subcommand("merge", "Merge the bases of a problem file");
  merge_cmd->add_option("file", merge_args.file, "Problem file")->required();
  merge_cmd->add_option("--distance", merge_args.distance,
                        "hamming | drastic | table:g1,g2,...");
  merge_cmd->add_option("--aggregator", merge_args.aggregator, "sigma | gmax");
  merge_cmd->add_option("--refinement", merge_args.refinement,
                        "none | closure | lex | lex-closure");
  merge_cmd->add_option("--fragment", merge_args.fragment, "horn | krom | none");
  merge_cmd->add_option("--lex-order", merge_args.lex_order,
                        "Interpretations ranked first by lex, e.g. \"{b} {a}\"");
  merge_cmd->add_option("--format", merge_args.format)
      ->check(CLI::IsMember({"text", "machine"}));

  CheckArgs check_args;
  auto* check_cmd = app.add_subcommand("check", "Search for postulate violations");
  check_cmd->add_option("--op", check_args.op, "distance,aggregator[,refinement]");
  check_cmd->add_option("--fragment", check_args.fragment, "horn | krom | none");
  check_cmd->add_option("--postulates", check_args.postulates, "e.g. ic0-ic3,ic5");
  check_cmd->add_option("--atoms", check_args.atoms, "Universe size (1-4)");
  check_cmd->add_option("--max-profile", check_args.max_profile,
                        "Largest profile enumerated");
  check_cmd->add_option("--max-witnesses", check_args.max_witnesses,
                        "Stop after this many witnesses (0 = all)");
  check_cmd->add_option("--threads", check_args.threads);
  check_cmd->add_option("--format", check_args.format)
      ->check(CLI::IsMember({"text", "machine"}));

  ClassifyArgs classify_args;
  auto* classify_cmd =
      app.add_subcommand("classify", "Classify a formula as Horn/Krom/general");
  classify_cmd->add_option("formula", classify_args.formula)->required();
  classify_cmd->add_option("--atoms", classify_args.atoms,
                           "Universe (default: atoms of the formula)");
  classify_cmd->add_option("--format", classify_args.format)
      ->check(CLI::IsMember({"text", "machine"}));

  ClosureArgs closure_args;
  auto* closure_cmd = app.add_subcommand("closure", "Close a model set");
  closure_cmd->add_option("models", closure_args.models, "e.g. \"{a} {b}\"")
      ->required();
  closure_cmd->add_option("--atoms", closure_args.atoms);
  closure_cmd->add_option("--fn", closure_args.fn, "and | maj3");

  std::string fixture_id;
  bool list = false;
  std::string reproduce_format = "text";
  auto* reproduce_cmd =
      app.add_subcommand("reproduce", "Recompute a worked example or proof table");
  reproduce_cmd->add_option("fixture", fixture_id);
  reproduce_cmd->add_flag("--list", list, "List fixture ids");
  reproduce_cmd->add_option("--format", reproduce_format)
      ->check(CLI::IsMember({"text", "machine"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  if (merge_cmd->parsed()) return cmd_merge(merge_args, out, err);
  if (check_cmd->parsed()) return cmd_check(check_args, out, err);
  if (classify_cmd->parsed()) return cmd_classify(classify_args, out, err);
  if (closure_cmd->parsed()) return cmd_closure(closure_args, out, err);
  if (reproduce_cmd->parsed()) {
    if (!list && fixture_id.empty()) {
      err << "error: reproduce needs a fixture id or --list\n";
      return kUsage;
    }
    return cmd_reproduce(fixture_id, list, reproduce_format, out, err);
  }
  return kUsage;
}

}  // namespace fragmerge::cli
