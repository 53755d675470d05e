#include <sstream>

#include "doctest.h"
#include "gen.h"
#include "helpers.h"
#include "ldql/oracles.h"

using namespace ldql;
using namespace ldql::test;

namespace {

WebOfLinkedData thm1_web() { return load_web_file(fixture("thm1.ldw")); }

}  // namespace

TEST_CASE("the context selector sees only authoritative subject triples") {
  WebOfLinkedData w = thm1_web();
  CHECK(context_selector(w, uri("u")) == std::set<RdfTriple>{triple("u", "p", "u2")});
  CHECK(context_selector(w, uri("u2")) == std::set<RdfTriple>{triple("u2", "p", "u")});
  // (u,u,u) lives in d2 = adoc(u2), where it is not authoritative for u.
  CHECK(context_selector(w, uri("nowhere")).empty());
  CHECK(context_selector(w, lit("l")).empty());
}

TEST_CASE("PP evaluation on the separation web") {
  WebOfLinkedData w = thm1_web();
  PpPattern p = parse_pp_pattern("?x <p> ?y");
  SolutionSet expected = {mapping({{"x", uri("u")}, {"y", uri("u2")}}),
                          mapping({{"x", uri("u2")}, {"y", uri("u")}})};
  CHECK(eval_pp_ctxt(p, w) == expected);
  // The non-authoritative triple (u,u,u) never feeds a binding.
  CHECK(eval_pp_ctxt(parse_pp_pattern("?x <u> ?y"), w).empty());
}

TEST_CASE("star includes the reflexive clause over terms(W)") {
  WebOfLinkedData w = thm1_web();
  SolutionSet via_u = eval_pp_ctxt(parse_pp_pattern("<u> <p>* ?y"), w);
  CHECK(via_u.count(mapping({{"y", uri("u")}})) == 1);   // zero steps
  CHECK(via_u.count(mapping({{"y", uri("u2")}})) == 1);  // one step
  // A URI outside terms(W) has no zero-length path.
  CHECK(eval_pp_ctxt(parse_pp_pattern("<ghost> <p>* <ghost>"), w).empty());
  // Same-variable endpoints demand loops.
  SolutionSet loops = eval_pp_ctxt(parse_pp_pattern("?x <p>/<p> ?x"), w);
  CHECK(loops == SolutionSet{mapping({{"x", uri("u")}}), mapping({{"x", uri("u2")}})});
}

TEST_CASE("negated property sets exclude exactly the listed predicates") {
  WebOfLinkedData w = wex();
  // The only authoritative steps in the example web are uA-p1->uB and
  // uB-p1->uC, so negating p1 leaves nothing.
  CHECK(eval_pp_ctxt(parse_pp_pattern("?x !(<p1>) ?y"), w).empty());
  CHECK(eval_pp_ctxt(parse_pp_pattern("?x !(<p9>) ?y"), w) ==
        SolutionSet{mapping({{"x", uri("uA")}, {"y", uri("uB")}}),
                    mapping({{"x", uri("uB")}, {"y", uri("uC")}})});
}

TEST_CASE("literal endpoints participate through object positions only") {
  std::istringstream in("#doc d0\n<u0> <p> \"text\" .\n#adoc\n<u0> d0\n");
  WebOfLinkedData w = load_web(in);
  CHECK(eval_pp_ctxt(parse_pp_pattern("<u0> <p> ?y"), w) ==
        SolutionSet{mapping({{"y", lit("text")}})});
  // Zero-length path at a literal that occurs in the data.
  CHECK(eval_pp_ctxt(parse_pp_pattern("\"text\" <p>* ?y"), w) ==
        SolutionSet{mapping({{"y", lit("text")}})});
  CHECK(eval_pp_ctxt(parse_pp_pattern("\"gone\" <p>* ?y"), w).empty());
  // No navigation step ever starts at a literal.
  CHECK(eval_pp_ctxt(parse_pp_pattern("\"text\" <p> ?y"), w).empty());
}

TEST_CASE("equivalent context selectors give equivalent star-free PP results") {
  // The two webs have equivalent context selectors but different term sets
  // ({a} vs {b}); star's zero-length clause ranges over terms(W), so only
  // star-free patterns are blind to the replaced document.
  WebOfLinkedData w1 = load_web_file(fixture("w1.ldw"));
  WebOfLinkedData w2 = load_web_file(fixture("w2.ldw"));
  gen::Rng rng(127);
  for (int i = 0; i < 50; ++i) {
    PpPattern p = gen::pp_pattern(rng, 3);
    while (serialize_pp_pattern(p).find('*') != std::string::npos) {
      p = gen::pp_pattern(rng, 3);
    }
    CAPTURE(serialize_pp_pattern(p));
    CHECK(eval_pp_ctxt(p, w1) == eval_pp_ctxt(p, w2));
  }
}

TEST_CASE("NautiLOD forward, backward and wildcard steps") {
  WebOfLinkedData w = wex();
  CHECK(eval_nautilod(*parse_nautilod("<p1>"), w, "uA") ==
        std::set<RdfTerm>{uri("uB")});
  // data(adoc(uB)) = {(uB,p1,uC)} holds no triple with object uB.
  CHECK(eval_nautilod(*parse_nautilod("<p1>^"), w, "uB").empty());
  // Only (uA,p1,uB) has subject uA in data(dA).
  CHECK(eval_nautilod(*parse_nautilod("<>"), w, "uA") ==
        std::set<RdfTerm>{uri("uB")});
  CHECK_THROWS_AS(eval_nautilod(*parse_nautilod("<p1>"), w, "p2"),
                  std::invalid_argument);
}

TEST_CASE("NautiLOD sequencing continues only through retrievable URIs") {
  std::istringstream in(
      "#doc d0\n<u0> <p> <u9> .\n<u0> <p> <u1> .\n#doc d1\n<u1> <p> \"leaf\" .\n"
      "#adoc\n<u0> d0\n<u1> d1\n");
  WebOfLinkedData w = load_web(in);
  // u9 is a dead end (not retrievable); u1 leads to the literal leaf.
  CHECK(eval_nautilod(*parse_nautilod("<p>/<p>"), w, "u0") ==
        std::set<RdfTerm>{lit("leaf")});
  auto starred = eval_nautilod(*parse_nautilod("<p>*"), w, "u0");
  CHECK(starred == std::set<RdfTerm>{uri("u0"), uri("u9"), uri("u1"), lit("leaf")});
}

TEST_CASE("NautiLOD ASK tests filter endpoints by their own documents") {
  WebOfLinkedData w = wex();
  // uB is retrievable but data(dB) holds no p2 triple.
  CHECK(eval_nautilod(*parse_nautilod("<p1>[ASK { ?s <p2> ?o }]"), w, "uA").empty());
  CHECK(eval_nautilod(*parse_nautilod("<p1>[ASK { ?s <p1> ?o }]"), w, "uA") ==
        std::set<RdfTerm>{uri("uB")});
  // GRAPH never matches inside ASK patterns: no dataset is in scope there.
  CHECK(eval_nautilod(*parse_nautilod("<p1>[ASK (GRAPH ?g { })]"), w, "uA").empty());
}

TEST_CASE("reachability closures per criterion") {
  WebOfLinkedData w = wex();
  PatternPtr p1 = parse_pattern("{ ?x <p1> ?y }");
  CHECK(reachable_docs(ReachCriterion::None, {"uA"}, *p1, w).doc_ids ==
        std::set<std::string>{"dA"});
  CHECK(reachable_docs(ReachCriterion::All, {"uA"}, *p1, w).doc_ids ==
        std::set<std::string>{"dA", "dB", "dC"});
  CHECK(reachable_docs(ReachCriterion::Match, {"uA"}, *p1, w).doc_ids ==
        std::set<std::string>{"dA", "dB", "dC"});
  PatternPtr p2 = parse_pattern("{ ?x <p2> ?y }");
  CHECK(reachable_docs(ReachCriterion::Match, {"uA"}, *p2, w).doc_ids ==
        std::set<std::string>{"dA", "dB", "dC"});
  PatternPtr p9 = parse_pattern("{ ?x <p9> ?y }");
  CHECK(reachable_docs(ReachCriterion::Match, {"uA"}, *p9, w).doc_ids ==
        std::set<std::string>{"dA"});
}

TEST_CASE("criterion properties: All ignores the pattern, None the links") {
  gen::Rng rng(131);
  for (int i = 0; i < 40; ++i) {
    WebOfLinkedData w = gen::web(rng);
    auto seeds = gen::seeds(rng, w);
    PatternPtr a = gen::pattern(rng, 2);
    PatternPtr b = gen::pattern(rng, 2);
    CHECK(reachable_docs(ReachCriterion::All, seeds, *a, w).doc_ids ==
          reachable_docs(ReachCriterion::All, seeds, *b, w).doc_ids);
    CHECK(reachable_docs(ReachCriterion::None, seeds, *a, w).doc_ids ==
          reachable_docs(ReachCriterion::None, seeds, *b, w).doc_ids);
    // Monotone in the seed set.
    std::set<std::string> more = seeds;
    auto extra = gen::seeds(rng, w);
    more.insert(extra.begin(), extra.end());
    for (auto c : {ReachCriterion::All, ReachCriterion::None, ReachCriterion::Match}) {
      auto small = reachable_docs(c, seeds, *a, w).doc_ids;
      auto big = reachable_docs(c, more, *a, w).doc_ids;
      for (const auto& id : small) CHECK(big.count(id) == 1);
    }
  }
}

TEST_CASE("reachability-based evaluation over the union graph") {
  WebOfLinkedData w = wex();
  CHECK(eval_reach(*parse_pattern("{ ?x <p1> ?y }"), ReachCriterion::All, {"uA"}, w) ==
        SolutionSet{mapping({{"x", uri("uA")}, {"y", uri("uB")}}),
                    mapping({{"x", uri("uB")}, {"y", uri("uC")}})});
  CHECK(eval_reach(*parse_pattern("{ ?x <p1> ?y }"), ReachCriterion::None, {}, w).empty());
  CHECK(eval_reach(*parse_pattern("{ ?x <p2> ?z }"), ReachCriterion::None, {"uC"}, w) ==
        SolutionSet{mapping({{"x", uri("uA")}, {"z", uri("uC")}})});
  // Named graphs are out of scope under reachability semantics.
  CHECK(eval_reach(*parse_pattern("(GRAPH ?g { })"), ReachCriterion::All, {"uA"}, w)
            .empty());
}

TEST_CASE("triple-pattern matching for c_Match uses unification") {
  PatternPtr loop = parse_pattern("{ ?x ?x ?x }");
  CHECK(matches_some_triple_pattern(*loop, triple("a", "a", "a")));
  CHECK_FALSE(matches_some_triple_pattern(*loop, triple("a", "a", "b")));
  PatternPtr mixed = parse_pattern("{ ?x <p> ?y . ?a <q> ?a }");
  CHECK(matches_some_triple_pattern(*mixed, triple("s", "p", "o")));
  CHECK(matches_some_triple_pattern(*mixed, triple("s", "q", "s")));
  CHECK_FALSE(matches_some_triple_pattern(*mixed, triple("s", "q", "o")));
}

TEST_CASE("surface syntax round-trips") {
  gen::Rng rng(137);
  for (int i = 0; i < 100; ++i) {
    PpPattern p = gen::pp_pattern(rng, 3);
    std::string text = serialize_pp_pattern(p);
    CAPTURE(text);
    PpPattern back = parse_pp_pattern(text);
    CHECK(serialize_pp_pattern(back) == text);

    NautilodPtr n = gen::nautilod(rng, 3);
    std::string ntext = serialize_nautilod(*n);
    CAPTURE(ntext);
    CHECK(serialize_nautilod(*parse_nautilod(ntext)) == ntext);
  }
}

TEST_CASE("oracles terminate on cyclic webs") {
  std::istringstream in(
      "#doc d0\n<u0> <p> <u1> .\n#doc d1\n<u1> <p> <u0> .\n#adoc\n<u0> d0\n<u1> d1\n");
  WebOfLinkedData w = load_web(in);
  // Three reflexive pairs over terms {u0,p,u1} plus the two p-steps.
  CHECK(eval_pp_ctxt(parse_pp_pattern("?x <p>* ?y"), w).size() == 5);
  CHECK(eval_nautilod(*parse_nautilod("<p>*"), w, "u0") ==
        std::set<RdfTerm>{uri("u0"), uri("u1")});
  CHECK(reachable_docs(ReachCriterion::All, {"u0"}, *GraphPattern::empty_bgp(), w)
            .doc_ids.size() == 2);
}
