#include <sstream>

#include "doctest.h"
#include "gen.h"
#include "helpers.h"

using namespace ldql;
using namespace ldql::test;

TEST_CASE("uris_of collects URIs from all positions") {
  CHECK(uris_of(triple("uA", "p1", "uB")) == std::set<std::string>{"uA", "p1", "uB"});
  CHECK(uris_of(triple("uA", "p2", "uA")) == std::set<std::string>{"uA", "p2"});
  CHECK(uris_of(make_triple(RdfTerm::blank("b1", "dA"), uri("p1"), lit("lit"))) ==
        std::set<std::string>{"p1"});
}

TEST_CASE("triple construction rejects malformed positions") {
  CHECK_THROWS_AS(make_triple(lit("x"), uri("p"), uri("o")), WebError);
  CHECK_THROWS_AS(make_triple(uri("s"), lit("p"), uri("o")), WebError);
  CHECK_THROWS_AS(make_triple(uri("s"), RdfTerm::blank("b", "d"), uri("o")), WebError);
}

TEST_CASE("link graph of the running-example web has 10 edges") {
  WebOfLinkedData w = wex();
  auto edges = link_graph(w);
  CHECK(edges.size() == 10);
  CHECK(edges.count(LinkGraphEdge{"dC", triple("uA", "p2", "uC"), "uA", "dA"}) == 1);
  CHECK(link_graph(WebOfLinkedData{}).empty());
}

TEST_CASE("link graph edges satisfy their defining conditions") {
  gen::Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    WebOfLinkedData w = gen::web(rng);
    for (const auto& e : link_graph(w)) {
      CHECK(w.doc(e.src).data.count(e.triple) == 1);
      CHECK(uris_of(e.triple).count(e.via) == 1);
      CHECK(w.adoc().at(e.via) == e.tgt);
    }
  }
}

TEST_CASE("link pattern matching follows both conditions") {
  LinkPattern ctx_p1_wild = make_link_pattern(
      LinkPatternSlot::context(), LinkPatternSlot::of(uri("p1")), LinkPatternSlot::wildcard());
  // Matching requires the via URI to sit in a wildcard slot.
  CHECK(matches(triple("uA", "p1", "uB"), "uB", ctx_p1_wild, "uA"));
  CHECK_FALSE(matches(triple("uA", "p1", "uB"), "uA", ctx_p1_wild, "uA"));
  LinkPattern wild_p2_wild = make_link_pattern(
      LinkPatternSlot::wildcard(), LinkPatternSlot::of(uri("p2")), LinkPatternSlot::wildcard());
  CHECK(matches(triple("uB", "p2", "uC"), "uB", wild_p2_wild, "uA"));
  CHECK(matches(triple("uB", "p2", "uC"), "uC", wild_p2_wild, "uA"));
}

TEST_CASE("a pattern without wildcards matches no edge") {
  gen::Rng rng(11);
  LinkPattern all_const = make_link_pattern(LinkPatternSlot::of(uri("u0")),
                                            LinkPatternSlot::of(uri("u1")),
                                            LinkPatternSlot::context());
  for (int i = 0; i < 20; ++i) {
    WebOfLinkedData w = gen::web(rng);
    for (const auto& e : link_graph(w)) {
      for (const auto& ctx : {std::string("u0"), std::string("u1"), std::string("u2")}) {
        CHECK_FALSE(matches(e.triple, e.via, all_const, ctx));
      }
    }
  }
}

TEST_CASE("dataset construction matches the running example") {
  WebOfLinkedData w = wex();
  RdfDataset ds = build_dataset(w, {"uA", "uC"});
  std::set<RdfTriple> expected_default = {triple("uA", "p1", "uB"), triple("uB", "p2", "uC"),
                                          triple("uA", "p2", "uC")};
  CHECK(ds.default_graph == expected_default);
  REQUIRE(ds.named.size() == 2);
  CHECK(ds.named.at("uA") ==
        std::set<RdfTriple>{triple("uA", "p1", "uB"), triple("uB", "p2", "uC")});
  CHECK(ds.named.at("uC") == std::set<RdfTriple>{triple("uA", "p2", "uC")});

  CHECK(build_dataset(w, {}).default_graph.empty());
  CHECK(build_dataset(w, {}).named.empty());
  // p2 is not in dom(adoc), so it contributes nothing.
  CHECK(build_dataset(w, {"p2"}).default_graph.empty());
}

TEST_CASE("dataset default graph is additive over URI sets") {
  gen::Rng rng(13);
  for (int i = 0; i < 30; ++i) {
    WebOfLinkedData w = gen::web(rng);
    std::set<std::string> u1 = gen::seeds(rng, w);
    std::set<std::string> u2 = gen::seeds(rng, w);
    std::set<std::string> both = u1;
    both.insert(u2.begin(), u2.end());
    std::set<RdfTriple> merged = build_dataset(w, u1).default_graph;
    auto d2 = build_dataset(w, u2).default_graph;
    merged.insert(d2.begin(), d2.end());
    CHECK(build_dataset(w, both).default_graph == merged);
  }
}

TEST_CASE("fixture loader reports the running-example shape") {
  WebOfLinkedData w = wex();
  CHECK(w.docs().size() == 3);
  CHECK(w.adoc().size() == 4);
  CHECK(w.retrievable("p1"));
  CHECK_FALSE(w.retrievable("p2"));
}

TEST_CASE("fixture loader rejects broken webs") {
  auto load = [](const std::string& text) {
    std::istringstream in(text);
    return load_web(in);
  };
  CHECK_THROWS_AS(load("#adoc\n<u> dX\n"), FixtureError);
  // dB is unreachable: adoc must be surjective.
  CHECK_THROWS_AS(load("#doc dA\n#doc dB\n#adoc\n<u> dA\n"), FixtureError);
  CHECK_THROWS_AS(load("#doc dA\n_:b <p> <o> .\n#doc dB\n_:b <p> <o> .\n"
                       "#adoc\n<u> dA\n<v> dB\n"),
                  FixtureError);
  CHECK_THROWS_AS(load("#doc dA\n<s> <p> .\n#adoc\n<u> dA\n"), FixtureError);
  CHECK_THROWS_AS(load("<s> <p> <o> .\n"), FixtureError);
  CHECK(load("").docs().empty());
}

TEST_CASE("webs survive a save/load round trip") {
  gen::Rng rng(17);
  for (int i = 0; i < 30; ++i) {
    WebOfLinkedData w = gen::web(rng);
    std::ostringstream out;
    save_web(w, out);
    std::istringstream in(out.str());
    WebOfLinkedData back = load_web(in);
    CHECK(back.adoc() == w.adoc());
    REQUIRE(back.docs().size() == w.docs().size());
    for (const auto& [id, d] : w.docs()) {
      CHECK(back.doc(id).data == d.data);
    }
  }
}

TEST_CASE("documents with no triples are legal") {
  std::istringstream in("#doc empty\n#adoc\n<u> empty\n");
  WebOfLinkedData w = load_web(in);
  CHECK(w.lookup("u")->data.empty());
}
