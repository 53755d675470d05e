#include <sstream>

#include "doctest.h"
#include "gen.h"
#include "helpers.h"
#include "ldql/oracles.h"
#include "ldql/translate.h"

using namespace ldql;
using namespace ldql::test;

TEST_CASE("atomic PP patterns translate to the SEED form") {
  QueryPtr q = translate_pp(parse_pp_pattern("?x <p> ?y"));
  QueryPtr expected = parse_query("SEED ?x << eps , { ?x <p> ?y } >>");
  CHECK(query_equal(q, expected));
}

TEST_CASE("negated sets translate to FILTER inequalities") {
  QueryPtr q = translate_pp(parse_pp_pattern("?x !(<u1>|<u2>) ?y"));
  std::string text = serialize_query(*q);
  CHECK(text.find("!= <u1>") != std::string::npos);
  CHECK(text.find("!= <u2>") != std::string::npos);
  CHECK(text.find("SEED ?x") != std::string::npos);
  CHECK(text.rfind("PROJECT", 0) == 0);  // the probe variable is projected away
}

TEST_CASE("literal subjects of atomic steps are unsatisfiable") {
  QueryPtr q = translate_pp(parse_pp_pattern("\"lit\" <p> ?y"));
  std::string text = serialize_query(*q);
  CHECK(text.find("BIND") != std::string::npos);
  CHECK(text.find("!=") != std::string::npos);
  gen::Rng rng(139);
  for (int i = 0; i < 20; ++i) {
    WebOfLinkedData w = gen::web(rng);
    CHECK(eval_query(*q, w, {}).empty());
  }
}

namespace {

void check_pp_equivalence(const PpPattern& p, const WebOfLinkedData& w) {
  SolutionSet expected = eval_pp_ctxt(p, w);
  SolutionSet got = eval_query(*translate_pp(p), w, {});
  CAPTURE(serialize_pp_pattern(p));
  {
    std::ostringstream dump;
    save_web(w, dump);
    CAPTURE(dump.str());
    CHECK(got == expected);
  }
}

}  // namespace

TEST_CASE("PP translation matches the oracle on the example webs") {
  for (const auto& name : {"wex.ldw", "thm1.ldw", "w1.ldw", "w2.ldw"}) {
    WebOfLinkedData w = load_web_file(fixture(name));
    for (const auto& text : {
             "?x <p> ?y", "?x <p1> ?y", "?x <p>* ?y", "<u> <p>* ?y", "?x <p>* <u2>",
             "<u> <p>* <u>", "<u> <p>* <u2>", "?x <p>/<p> ?y", "?x (<p>|<p1>)* ?x",
             "?x !(<p>) ?y", "\"lit\" <p>* ?y", "?x <p1>/<p2>* ?y",
         }) {
      check_pp_equivalence(parse_pp_pattern(text), w);
    }
  }
}

TEST_CASE("PP translation matches the oracle on random webs and patterns") {
  gen::Rng rng(149);
  gen::WebOptions opts;
  for (int i = 0; i < 150; ++i) {
    opts.cover_data_uris = (i % 2 == 0);
    WebOfLinkedData w = gen::web(rng, opts);
    PpPattern p = gen::pp_pattern(rng, 3);
    check_pp_equivalence(p, w);
  }
}

TEST_CASE("NautiLOD base translations use the final GRAPH pattern") {
  NautilodTranslation t = translate_nautilod(*parse_nautilod("<p>"));
  std::string text = serialize_query(*t.query);
  CHECK(t.out == var("x"));
  CHECK(text.find("(GRAPH ?_g") != std::string::npos);
  CHECK(text.find("<p> ?x") != std::string::npos);
  CHECK(text.rfind("PROJECT { ?x }", 0) == 0);
}

TEST_CASE("navigation prefixes use the link-pattern simulation") {
  // p1/p2* keeps its prefix as {+ <p1> _}/{+ <p2> _}* inside the translation.
  NautilodTranslation t = translate_nautilod(*parse_nautilod("<p1>/<p2>*"));
  std::string text = serialize_query(*t.query);
  CHECK(text.find("{+ <p1> _}/{+ <p2> _}*") != std::string::npos);
}

TEST_CASE("epsilon-capable expressions gain the identity branch") {
  NautilodTranslation t = translate_nautilod(*parse_nautilod("<p>*"));
  std::string text = serialize_query(*t.query);
  CHECK(text.find("<< eps , (GRAPH ?x { }) >>") != std::string::npos);
}

TEST_CASE("the free variable dodges ASK pattern variables") {
  NautilodTranslation t =
      translate_nautilod(*parse_nautilod("<p>[ASK { ?x <q> ?x1 }]"));
  CHECK(t.out == var("x2"));
}

namespace {

void check_nautilod_equivalence(const NautilodExpr& n, const WebOfLinkedData& w) {
  NautilodTranslation t = translate_nautilod(n);
  for (const auto& [start, id] : w.adoc()) {
    std::set<RdfTerm> expected = eval_nautilod(n, w, start);
    SolutionSet got = eval_query(*t.query, w, {start});
    std::set<RdfTerm> got_terms;
    for (const auto& m : got) {
      REQUIRE(m.size() == 1);
      REQUIRE(m.begin()->first == t.out);
      got_terms.insert(m.begin()->second);
    }
    CAPTURE(serialize_nautilod(n));
    CAPTURE(start);
    {
      std::ostringstream dump;
      save_web(w, dump);
      CAPTURE(dump.str());
      CHECK(got_terms == expected);
    }
  }
}

}  // namespace

TEST_CASE("NautiLOD translation matches the oracle on the example web") {
  WebOfLinkedData w = wex();
  for (const auto& text : {
           "<p1>", "<p1>^", "<>", "<p1>/<p2>", "<p1>*", "<p1>/<p2>*",
           "<p1>[ASK { ?s <p1> ?o }]", "(<p1>|<p2>)*", "<>*",
           "<p1>*[ASK { ?s <p2> ?o }]", "<p2>^/<p1>",
       }) {
    check_nautilod_equivalence(*parse_nautilod(text), w);
  }
}

TEST_CASE("NautiLOD translation matches the oracle on random inputs") {
  gen::Rng rng(151);
  gen::WebOptions opts;
  for (int i = 0; i < 120; ++i) {
    opts.cover_data_uris = (i % 2 == 0);
    WebOfLinkedData w = gen::web(rng, opts);
    NautilodPtr n = gen::nautilod(rng, 3);
    check_nautilod_equivalence(*n, w);
  }
}

TEST_CASE("reachability translations have the stated shapes") {
  PatternPtr p = parse_pattern("{ ?x <p1> ?y }");
  QueryPtr none = translate_reachability(ReachCriterion::None, p);
  CHECK(query_equal(none, LdqlQuery::basic(Lpe::epsilon(), p)));
  CHECK(serialize_query(*none) == "<< eps , { ?x <p1> ?y } >>");

  QueryPtr all = translate_reachability(ReachCriterion::All, p);
  CHECK(serialize_query(*all).rfind("<< {_ _ _}* ,", 0) == 0);

  QueryPtr match = translate_reachability(ReachCriterion::Match, p);
  std::string text = serialize_query(*match);
  CHECK(text.find("= <p1>") != std::string::npos);  // predicate equality filter
  REQUIRE(match->lpe->kind == Lpe::Kind::Star);
  // Three navigation arms for the single triple pattern.
  int arms = 1;
  for (LpePtr cur = match->lpe->left; cur->kind == Lpe::Kind::Alt; cur = cur->left) ++arms;
  CHECK(arms == 3);
}

namespace {

void check_reach_equivalence(ReachCriterion c, const GraphPattern& p,
                             const std::set<std::string>& seeds,
                             const WebOfLinkedData& w) {
  SolutionSet expected = eval_reach(p, c, seeds, w);
  QueryPtr q = translate_reachability(c, std::make_shared<const GraphPattern>(p));
  SolutionSet got = eval_query(*q, w, seeds);
  CAPTURE(serialize_pattern(p));
  CHECK(got == expected);
}

}  // namespace

TEST_CASE("reachability translation matches the oracle") {
  gen::Rng rng(157);
  gen::WebOptions opts;
  for (int i = 0; i < 100; ++i) {
    opts.cover_data_uris = (i % 2 == 0);
    WebOfLinkedData w = gen::web(rng, opts);
    auto seeds = gen::seeds(rng, w);
    // The reachability formalism has no named graphs in scope, so its
    // patterns never use GRAPH.
    PatternPtr p = gen::pattern(rng, 2, false, &w);
    for (auto c : {ReachCriterion::All, ReachCriterion::None, ReachCriterion::Match}) {
      check_reach_equivalence(c, *p, seeds, w);
    }
  }
}

TEST_CASE("repeated variables in triple patterns constrain c_Match steps") {
  std::istringstream in(
      "#doc d0\n<u0> <p> <u1> .\n#doc d1\n<u1> <u1> <u1> .\n#doc d2\n<u2> <q> <u2> .\n"
      "#adoc\n<u0> d0\n<u1> d1\n<u2> d2\n");
  WebOfLinkedData w = load_web(in);
  PatternPtr loop = parse_pattern("{ ?v ?v ?v }");
  check_reach_equivalence(ReachCriterion::Match, *loop, {"u0"}, w);
  CHECK(reachable_docs(ReachCriterion::Match, {"u0"}, *loop, w).doc_ids ==
        std::set<std::string>{"d0"});
}

TEST_CASE("separation fixtures: the LDQL query sees what PPs cannot") {
  QueryPtr q = parse_query("SEED {<u>} << {+ <p> _} , { ?x ?x ?x } >>");
  WebOfLinkedData thm1 = load_web_file(fixture("thm1.ldw"));
  CHECK(eval_query(*q, thm1, {}) == SolutionSet{mapping({{"x", uri("u")}})});

  WebOfLinkedData w1 = load_web_file(fixture("w1.ldw"));
  WebOfLinkedData w2 = load_web_file(fixture("w2.ldw"));
  CHECK(eval_query(*q, w1, {}) == SolutionSet{mapping({{"x", uri("a")}})});
  CHECK(eval_query(*q, w2, {}) == SolutionSet{mapping({{"x", uri("b")}})});
}
