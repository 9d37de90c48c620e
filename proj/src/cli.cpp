#include "coax/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "coax/dsl.hpp"
#include "coax/errors.hpp"
#include "coax/fixpoint.hpp"
#include "coax/gen.hpp"
#include "coax/proof.hpp"
#include "coax/proofcheck.hpp"
#include "coax/render.hpp"

namespace coax {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Prefixes parse errors with the file they come from.
template <class F>
auto parsing(const std::string& path, F&& f) {
  try {
    return f(read_file(path));
  } catch (const ParseError& e) {
    throw UsageError(path + ":" + e.what());
  }
}

Format format_of(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "dot") return Format::Dot;
  return Format::Text;
}

std::vector<std::int64_t> parse_carries(const std::string& spec) {
  auto to_int = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
      throw UsageError("bad carry list '" + spec + "'");
    }
    return v;
  };
  std::vector<std::int64_t> out;
  if (auto dots = spec.find(".."); dots != std::string::npos) {
    auto lo = to_int(std::string_view(spec).substr(0, dots));
    auto hi = to_int(std::string_view(spec).substr(dots + 2));
    if (hi < lo || hi - lo > 1'000'000) throw UsageError("bad carry range '" + spec + "'");
    for (auto c = lo; c <= hi; ++c) out.push_back(c);
    return out;
  }
  std::string_view rest(spec);
  while (true) {
    auto comma = rest.find(',');
    out.push_back(to_int(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(item);
  return out;
}

struct Options {
  std::string file;
  std::string second;  // judgment, spec file, or generator input
  std::string kind;    // generator name
  std::string format = "text";
  std::string output;
  std::string target, pred, root, elem, streams, carries = "-1,0,1,2";
  std::size_t max_iters = kDefaultBudget;
  std::size_t level = 0;
  std::size_t cap = 0;  // 0: generator default
  bool trace = false;
  bool regular = false;
};

void emit_not_derivable(const System& sys, const Term& j, const Options& o, std::ostream& out) {
  auto w = level_witness(sys, j, o.max_iters, o.max_iters);
  if (format_of(o.format) == Format::Json) {
    nlohmann::ordered_json doc;
    doc["judgment"] = j.to_string();
    doc["derivable"] = false;
    doc["witness"] = to_string(w);
    out << doc.dump(2) << "\n";
  } else {
    out << "not derivable: " << j << "\n" << to_string(w) << "\n";
  }
}

int cmd_interpretation(const std::string& which, const Options& o, std::ostream& out) {
  auto fmt = format_of(o.format);
  if (fmt == Format::Dot) throw UsageError("--format dot applies to proofs only");
  System sys = parsing(o.file, [](const std::string& s) { return parse_system(s); });
  Interpretation r = which == "ind"     ? ind(sys, o.max_iters)
                     : which == "coind" ? coind(sys, o.max_iters)
                                        : generated(sys, o.max_iters);
  out << render(r, fmt, o.trace);
  return kExitOk;
}

int cmd_check(const Options& o, std::ostream& out) {
  System sys = parsing(o.file, [](const std::string& s) { return parse_system(s); });
  Term j = parse_judgment(o.second);
  auto interp = generated(sys, o.max_iters);
  if (!interp.contains(j)) {
    emit_not_derivable(sys, j, o, out);
    return kExitRejected;
  }
  auto proof = prove_regular(sys, j);
  auto fmt = format_of(o.format);
  if (fmt == Format::Text) out << "derivable: " << j << "\n";
  out << render(sys, *proof, fmt);
  return kExitOk;
}

int cmd_prove(const Options& o, std::ostream& out) {
  System sys = parsing(o.file, [](const std::string& s) { return parse_system(s); });
  Term j = parse_judgment(o.second);
  auto fmt = format_of(o.format);
  if (o.regular) {
    auto proof = prove_regular(sys, j);
    if (!proof) {
      emit_not_derivable(sys, j, o, out);
      return kExitRejected;
    }
    out << render(sys, *proof, fmt);
    return kExitOk;
  }
  auto proof = prove_approx(sys, j, o.level);
  if (!proof) {
    emit_not_derivable(sys, j, o, out);
    return kExitRejected;
  }
  out << render(sys, *proof, fmt);
  return kExitOk;
}

int cmd_bcp(const Options& o, std::ostream& out) {
  auto fmt = format_of(o.format);
  if (fmt == Format::Dot) throw UsageError("--format dot applies to proofs only");
  System sys = parsing(o.file, [](const std::string& s) { return parse_system(s); });
  JudgmentSet spec = parsing(o.second, [](const std::string& s) { return parse_judgment_set(s); });
  Verdict v = bounded_coinduction(sys, spec, o.max_iters);
  out << render(v, fmt);
  return v.accepted ? kExitOk : kExitRejected;
}

int cmd_gen(const Options& o, std::ostream& out) {
  const std::size_t cap = o.cap == 0 ? kDefaultCap : o.cap;
  std::optional<std::string> target;
  if (!o.target.empty()) target = o.target;
  auto text = read_file(o.second);
  System sys;
  try {
    if (o.kind == "visit") {
      sys = gen_visit(parse_graph(text), cap);
    } else if (o.kind == "dist") {
      sys = gen_dist(parse_graph(text), target, cap);
    } else if (o.kind == "minpath") {
      sys = gen_minpath(parse_graph(text), target, cap);
    } else if (o.kind == "first") {
      sys = gen_first(parse_grammar(text), cap);
    } else if (o.kind == "list") {
      auto pred = list_pred_from_string(o.pred);
      if (!pred) throw UsageError("--pred must be member, allPos, elems, maxElem or path0");
      if (o.root.empty()) throw UsageError("--root is required");
      std::optional<Term> elem;
      if (!o.elem.empty()) elem = parse_judgment(o.elem);
      sys = gen_listpred(parse_equations(text), *pred, o.root, elem, cap);
    } else if (o.kind == "add") {
      auto roots = split_commas(o.streams);
      if (roots.size() != 3) throw UsageError("--streams needs three comma-separated variables");
      sys = gen_add(parse_equations(text), roots[0], roots[1], roots[2], parse_carries(o.carries),
                    cap);
    } else if (o.kind == "lambda") {
      sys = gen_lambda(parse_lambda(text), o.cap == 0 ? kDefaultClosureBudget : o.cap);
    } else {
      throw UsageError("unknown generator '" + o.kind + "'");
    }
  } catch (const ParseError& e) {
    throw UsageError(o.second + ":" + e.what());
  }
  std::string rendered = render_system(sys);
  if (o.output.empty()) {
    out << rendered;
  } else {
    std::ofstream f(o.output, std::ios::binary);
    if (!f) throw UsageError("cannot write " + o.output);
    f << rendered;
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Inference systems with coaxioms and corules", "coax"};
  app.require_subcommand(1);
  Options o;
  const std::vector<std::string> formats{"text", "json", "dot"};

  auto common = [&](CLI::App* c, bool formats_flag) {
    c->add_option("--max-iters", o.max_iters, "Iteration budget for fixpoints")
        ->check(CLI::PositiveNumber);
    if (formats_flag) {
      c->add_option("--format", o.format, "Output format")->check(CLI::IsMember(formats));
    }
  };

  std::vector<CLI::App*> interp;
  for (const char* name : {"ind", "coind", "generated"}) {
    auto* c = app.add_subcommand(name, std::string("Print the ") + name + " interpretation");
    c->add_option("file", o.file, "Rule file (.coax)")->required();
    c->add_flag("--trace", o.trace, "Print every iteration");
    common(c, true);
    interp.push_back(c);
  }

  auto* check = app.add_subcommand("check", "Membership in the generated interpretation");
  check->add_option("file", o.file)->required();
  check->add_option("judgment", o.second)->required();
  common(check, true);

  auto* prove = app.add_subcommand("prove", "Construct a proof tree");
  prove->add_option("file", o.file)->required();
  prove->add_option("judgment", o.second)->required();
  auto* level = prove->add_option("--level", o.level, "Approximated proof of this level");
  auto* regular = prove->add_flag("--regular", o.regular, "Regular (possibly infinite) proof");
  level->excludes(regular);
  common(prove, true);

  auto* bcp = app.add_subcommand("bcp", "Bounded coinduction check of a judgment set");
  bcp->add_option("file", o.file)->required();
  bcp->add_option("spec", o.second, "File of `judgment.` lines")->required();
  common(bcp, true);

  auto* gen = app.add_subcommand("gen", "Instantiate an example system");
  gen->add_option("kind", o.kind)
      ->required()
      ->check(CLI::IsMember({"visit", "dist", "minpath", "first", "list", "add", "lambda"}));
  gen->add_option("input", o.second)->required();
  gen->add_option("-o,--output", o.output, "Write the system here instead of stdout");
  gen->add_option("--target", o.target, "dist/minpath: only this target node");
  gen->add_option("--cap", o.cap, "Rule cap (lambda: closure budget)");
  gen->add_option("--pred", o.pred, "list: member, allPos, elems, maxElem or path0");
  gen->add_option("--root", o.root, "list: root variable");
  gen->add_option("--elem", o.elem, "list member: element");
  gen->add_option("--streams", o.streams, "add: r1,r2,r");
  gen->add_option("--carries", o.carries, "add: comma list or lo..hi");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    for (auto* c : interp) {
      if (c->parsed()) return cmd_interpretation(c->get_name(), o, out);
    }
    if (check->parsed()) return cmd_check(o, out);
    if (prove->parsed()) return cmd_prove(o, out);
    if (bcp->parsed()) return cmd_bcp(o, out);
    if (gen->parsed()) return cmd_gen(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const InstantiationTooLarge& e) {
    err << "cap exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const ClosureBudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace coax
