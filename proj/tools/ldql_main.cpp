#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ldql/certificate_io.h"
#include "ldql/executor.h"
#include "ldql/oracles.h"
#include "ldql/parser.h"
#include "ldql/printer.h"
#include "ldql/rewrite.h"
#include "ldql/safeness.h"
#include "ldql/semantics.h"
#include "ldql/translate.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitParse = 2;
constexpr int kExitNotCertified = 3;
constexpr int kExitNonEnumerable = 4;

struct CommonArgs {
  std::string query;
  std::string query_file;
  std::string web_path;
  bool use_http = false;
  std::vector<std::string> seeds;
  std::string format = "text";
  bool trace = false;
  size_t nf_guard = 100000;
  int http_timeout = 10;
  int http_delay = 0;
};

std::string load_query_text(const CommonArgs& args) {
  if (!args.query.empty()) return args.query;
  std::ifstream in(args.query_file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open query file: " + args.query_file);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::set<std::string> seed_set(const CommonArgs& args) {
  return {args.seeds.begin(), args.seeds.end()};
}

json ast_json(const ldql::LdqlQuery& q);
json ast_json(const ldql::Lpe& l);

json ast_json(const ldql::GraphPattern& p) {
  using ldql::GraphPattern;
  json out;
  switch (p.kind) {
    case GraphPattern::Kind::Bgp: {
      out["kind"] = "bgp";
      out["triples"] = json::array();
      for (const auto& tp : p.triples) {
        auto slot = [](const ldql::TermOrVar& t) {
          if (ldql::is_var(t)) return "?" + ldql::as_var(t).name;
          return ldql::serialize_term(ldql::as_term(t));
        };
        out["triples"].push_back({slot(tp.s), slot(tp.p), slot(tp.o)});
      }
      return out;
    }
    case GraphPattern::Kind::And: out["kind"] = "and"; break;
    case GraphPattern::Kind::Opt: out["kind"] = "opt"; break;
    case GraphPattern::Kind::Union: out["kind"] = "union"; break;
    case GraphPattern::Kind::Filter:
      out["kind"] = "filter";
      out["expr"] = ldql::serialize_expr(*p.expr);
      break;
    case GraphPattern::Kind::Graph:
      out["kind"] = "graph";
      out["graph"] = ldql::is_var(p.graph_term)
                         ? "?" + ldql::as_var(p.graph_term).name
                         : ldql::serialize_term(ldql::as_term(p.graph_term));
      break;
    case GraphPattern::Kind::Bind:
      out["kind"] = "bind";
      out["expr"] = ldql::serialize_expr(*p.expr);
      out["variable"] = p.bind_var.name;
      break;
  }
  if (p.left) out["left"] = ast_json(*p.left);
  if (p.right) out["right"] = ast_json(*p.right);
  return out;
}

json ast_json(const ldql::Lpe& l) {
  using ldql::Lpe;
  json out;
  switch (l.kind) {
    case Lpe::Kind::Epsilon: out["kind"] = "epsilon"; return out;
    case Lpe::Kind::Pattern:
      out["kind"] = "link-pattern";
      out["text"] = ldql::serialize_lpe(l);
      return out;
    case Lpe::Kind::Concat: out["kind"] = "concat"; break;
    case Lpe::Kind::Alt: out["kind"] = "alt"; break;
    case Lpe::Kind::Star: out["kind"] = "star"; break;
    case Lpe::Kind::Test: out["kind"] = "test"; break;
    case Lpe::Kind::NavSub:
      out["kind"] = "nav";
      out["variable"] = l.var.name;
      out["query"] = ast_json(*l.sub);
      return out;
  }
  if (l.left) out["left"] = ast_json(*l.left);
  if (l.right) out["right"] = ast_json(*l.right);
  return out;
}

json ast_json(const ldql::LdqlQuery& q) {
  using ldql::LdqlQuery;
  json out;
  switch (q.kind) {
    case LdqlQuery::Kind::Basic:
      out["kind"] = "basic";
      out["lpe"] = ast_json(*q.lpe);
      out["pattern"] = ast_json(*q.pattern);
      return out;
    case LdqlQuery::Kind::SeedUris:
      out["kind"] = "seed-uris";
      out["uris"] = q.seed_uris;
      out["query"] = ast_json(*q.left);
      return out;
    case LdqlQuery::Kind::SeedVar:
      out["kind"] = "seed-var";
      out["variable"] = q.seed_var.name;
      out["query"] = ast_json(*q.left);
      return out;
    case LdqlQuery::Kind::And: out["kind"] = "and"; break;
    case LdqlQuery::Kind::Union: out["kind"] = "union"; break;
    case LdqlQuery::Kind::Project: {
      out["kind"] = "project";
      out["variables"] = json::array();
      for (const auto& v : q.project_vars) out["variables"].push_back(v.name);
      out["query"] = ast_json(*q.left);
      return out;
    }
  }
  out["left"] = ast_json(*q.left);
  out["right"] = ast_json(*q.right);
  return out;
}

void print_solutions(const ldql::SolutionSet& solutions, const std::string& format) {
  if (format == "structured") {
    json out = json::array();
    for (const auto& m : solutions) {
      json jm;
      for (const auto& [v, t] : m) jm["?" + v.name] = ldql::serialize_term(t);
      out.push_back(std::move(jm));
    }
    std::cout << out.dump(2) << "\n";
    return;
  }
  std::vector<std::string> lines;
  for (const auto& m : solutions) lines.push_back(ldql::serialize_mapping(m));
  std::sort(lines.begin(), lines.end());
  for (const auto& line : lines) std::cout << line << "\n";
}

void print_report_text(const ldql::SafenessReport& report) {
  if (report.certified()) {
    std::cout << "verdict: certified\n";
    const auto& cert = *report.certificate;
    std::cout << "normal form: " << ldql::serialize_query(*cert.normal_form) << "\n";
    auto branches = ldql::union_branches(cert.normal_form);
    for (size_t b = 0; b < cert.conjuncts.size(); ++b) {
      const auto& conj = cert.conjuncts[b];
      std::cout << "conjunct " << b + 1 << " order:";
      for (size_t idx : conj.order) std::cout << " " << idx + 1;
      std::cout << "\n";
      auto units = ldql::and_units(branches[b]);
      for (size_t pos = 0; pos < conj.order.size(); ++pos) {
        const auto& j = conj.justifications[pos];
        std::cout << "  " << pos + 1 << ". "
                  << ldql::serialize_query(*units[conj.order[pos]]) << "\n     ";
        if (j.kind == ldql::Justification::Kind::Safe) {
          std::cout << "Web-safe on its own";
        } else {
          std::cout << "SEED variable ?" << j.var.name
                    << " strongly bound by earlier unit(s):";
          for (size_t p : j.providers) std::cout << " " << p + 1;
        }
        std::cout << "\n";
      }
    }
    return;
  }
  std::cout << "verdict: not certified\n";
  std::cout << "note: the condition is sufficient only; this is not a proof of unsafety\n";
  for (const auto& r : report.refusals) {
    std::cout << r.where << ": " << r.detail;
    if (!r.blocked_vars.empty()) {
      std::cout << " (";
      for (size_t i = 0; i < r.blocked_vars.size(); ++i) {
        if (i) std::cout << ", ";
        std::cout << "?" << r.blocked_vars[i].name;
      }
      std::cout << ")";
    }
    std::cout << "\n";
  }
}

void print_trace(const ldql::ExecutionTrace& trace) {
  std::cerr << "trace: distinct lookups " << trace.attempted.size() << " (successes "
            << trace.successes << ", failures " << trace.failures << ")\n";
  std::cerr << "trace: lpe steps " << trace.lpe_steps << ", basic executions "
            << trace.basic_executions << ", conjunct joins " << trace.conjunct_joins
            << "\n";
  std::cerr << "trace: wall time " << trace.wall_millis << " ms\n";
  for (const auto& uri : trace.attempted) std::cerr << "trace: lookup <" << uri << ">\n";
}

int run(int argc, char** argv) {
  CLI::App app{"LDQL: parse, analyze, evaluate, execute and translate queries over "
               "Webs of Linked Data"};
  app.require_subcommand(1);
  CommonArgs args;

  auto add_query_opts = [&](CLI::App* cmd) {
    cmd->add_option("-q,--query", args.query, "query text");
    cmd->add_option("--query-file", args.query_file, "file holding the query");
    cmd->add_option("--format", args.format, "output format: text|structured")
        ->check(CLI::IsMember({"text", "structured"}));
  };

  CLI::App* parse_cmd = app.add_subcommand("parse", "parse a query and print its canonical form");
  add_query_opts(parse_cmd);

  CLI::App* analyze_cmd = app.add_subcommand("analyze", "run the Web-safeness analyzer");
  add_query_opts(analyze_cmd);
  analyze_cmd->add_option("--nf-guard", args.nf_guard, "normal-form node guard");

  CLI::App* eval_cmd =
      app.add_subcommand("eval", "reference (denotational) evaluation over a fixture web");
  add_query_opts(eval_cmd);
  eval_cmd->add_option("-w,--web", args.web_path, "web fixture path")->required();
  eval_cmd->add_option("--seed", args.seeds, "seed URI (repeatable; none for the empty set)");

  CLI::App* exec_cmd = app.add_subcommand("exec", "lookup-driven execution");
  add_query_opts(exec_cmd);
  exec_cmd->add_option("-w,--web", args.web_path, "web fixture path");
  exec_cmd->add_flag("--http", args.use_http, "dereference over HTTP");
  exec_cmd->add_option("--seed", args.seeds, "seed URI (repeatable)");
  exec_cmd->add_flag("--trace", args.trace, "print a lookup trace to stderr");
  exec_cmd->add_option("--nf-guard", args.nf_guard, "normal-form node guard");
  exec_cmd->add_option("--timeout", args.http_timeout, "HTTP timeout in seconds");
  exec_cmd->add_option("--delay", args.http_delay, "per-host politeness delay (ms)");

  std::string from;
  std::string surface;
  std::string start;
  CLI::App* translate_cmd =
      app.add_subcommand("translate", "translate a rival formalism into LDQL");
  translate_cmd
      ->add_option("--from", from, "source formalism: pp|nautilod|reach:all|reach:none|reach:match")
      ->required()
      ->check(CLI::IsMember({"pp", "nautilod", "reach:all", "reach:none", "reach:match"}));
  translate_cmd->add_option("-p,--pattern", surface, "source expression/pattern")->required();

  CLI::App* oracle_cmd =
      app.add_subcommand("oracle", "evaluate a rival formalism with its reference semantics");
  oracle_cmd
      ->add_option("--from", from, "formalism: pp|nautilod|reach:all|reach:none|reach:match")
      ->required()
      ->check(CLI::IsMember({"pp", "nautilod", "reach:all", "reach:none", "reach:match"}));
  oracle_cmd->add_option("-p,--pattern", surface, "source expression/pattern")->required();
  oracle_cmd->add_option("-w,--web", args.web_path, "web fixture path")->required();
  oracle_cmd->add_option("--seed", args.seeds, "seed URI (reach oracles; repeatable)");
  oracle_cmd->add_option("--start", start, "start URI (nautilod oracle)");
  oracle_cmd->add_option("--format", args.format, "output format: text|structured");

  CLI11_PARSE(app, argc, argv);

  if (parse_cmd->parsed()) {
    ldql::QueryPtr q = ldql::parse_query(load_query_text(args));
    if (args.format == "structured") {
      std::cout << ast_json(*q).dump(2) << "\n";
    } else {
      std::cout << ldql::serialize_query(*q) << "\n";
    }
    return kExitOk;
  }

  if (analyze_cmd->parsed()) {
    ldql::QueryPtr q = ldql::parse_query(load_query_text(args));
    ldql::SafenessReport report =
        ldql::is_websafe_syntactic(q, ldql::NormalFormOptions{args.nf_guard});
    if (args.format == "structured") {
      std::cout << ldql::report_to_json(report) << "\n";
    } else {
      print_report_text(report);
    }
    return kExitOk;
  }

  if (eval_cmd->parsed()) {
    ldql::QueryPtr q = ldql::parse_query(load_query_text(args));
    ldql::WebOfLinkedData w = ldql::load_web_file(args.web_path);
    print_solutions(ldql::eval_query(*q, w, seed_set(args)), args.format);
    return kExitOk;
  }

  if (exec_cmd->parsed()) {
    if (args.web_path.empty() == !args.use_http) {
      std::cerr << "exec needs exactly one of --web or --http\n";
      return kExitRuntime;
    }
    ldql::QueryPtr q = ldql::parse_query(load_query_text(args));
    ldql::ExecutionTrace trace;
    ldql::SolutionSet solutions;
    ldql::NormalFormOptions opts{args.nf_guard};
    if (args.use_http) {
      ldql::HttpLookup::Options http;
      http.timeout_seconds = args.http_timeout;
      http.per_host_delay_millis = args.http_delay;
      ldql::HttpLookup lk(http);
      solutions = ldql::exec_query(*q, seed_set(args), lk, &trace, opts);
    } else {
      ldql::WebOfLinkedData w = ldql::load_web_file(args.web_path);
      ldql::FixtureLookup lk(w);
      solutions = ldql::exec_query(*q, seed_set(args), lk, &trace, opts);
    }
    print_solutions(solutions, args.format);
    if (args.trace) print_trace(trace);
    return kExitOk;
  }

  if (translate_cmd->parsed()) {
    ldql::QueryPtr q;
    if (from == "pp") {
      q = ldql::translate_pp(ldql::parse_pp_pattern(surface));
    } else if (from == "nautilod") {
      ldql::NautilodTranslation t = ldql::translate_nautilod(*ldql::parse_nautilod(surface));
      std::cerr << "free variable: ?" << t.out.name << "\n";
      q = t.query;
    } else {
      ldql::ReachCriterion c = from == "reach:all"   ? ldql::ReachCriterion::All
                               : from == "reach:none" ? ldql::ReachCriterion::None
                                                      : ldql::ReachCriterion::Match;
      q = ldql::translate_reachability(c, ldql::parse_pattern(surface));
    }
    std::cout << ldql::serialize_query(*q) << "\n";
    return kExitOk;
  }

  if (oracle_cmd->parsed()) {
    ldql::WebOfLinkedData w = ldql::load_web_file(args.web_path);
    if (from == "pp") {
      print_solutions(ldql::eval_pp_ctxt(ldql::parse_pp_pattern(surface), w), args.format);
    } else if (from == "nautilod") {
      if (start.empty()) {
        std::cerr << "nautilod oracle needs --start <uri>\n";
        return kExitRuntime;
      }
      auto terms = ldql::eval_nautilod(*ldql::parse_nautilod(surface), w, start);
      for (const auto& t : terms) std::cout << ldql::serialize_term(t) << "\n";
    } else {
      ldql::ReachCriterion c = from == "reach:all"   ? ldql::ReachCriterion::All
                               : from == "reach:none" ? ldql::ReachCriterion::None
                                                      : ldql::ReachCriterion::Match;
      print_solutions(
          ldql::eval_reach(*ldql::parse_pattern(surface), c, seed_set(args), w),
          args.format);
    }
    return kExitOk;
  }

  return kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ldql::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitParse;
  } catch (const ldql::NotCertifiedError& e) {
    std::cerr << e.what() << "\n";
    for (const auto& r : e.report.refusals) {
      std::cerr << r.where << ": " << r.detail;
      for (const auto& v : r.blocked_vars) std::cerr << " ?" << v.name;
      std::cerr << "\n";
    }
    return kExitNotCertified;
  } catch (const ldql::NonEnumerableError& e) {
    std::cerr << e.what() << "\n";
    return kExitNonEnumerable;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitRuntime;
  }
}
