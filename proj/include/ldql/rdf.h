#ifndef LDQL_RDF_H
#define LDQL_RDF_H

#include <iosfwd>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ldql {

/// An RDF term: URI, blank node, or plain literal. Blank nodes carry the id
/// of their owning document so that blank-node sets stay disjoint across
/// documents. Literals are plain lexical strings, compared exactly.
struct RdfTerm {
  enum class Kind { Uri, Blank, Literal };

  Kind kind = Kind::Uri;
  std::string value;
  std::string scope;  // blank nodes only: owning document id

  static RdfTerm uri(std::string u);
  static RdfTerm blank(std::string label, std::string scope);
  static RdfTerm literal(std::string lex);

  bool is_uri() const { return kind == Kind::Uri; }
  bool is_blank() const { return kind == Kind::Blank; }
  bool is_literal() const { return kind == Kind::Literal; }

  friend bool operator==(const RdfTerm&, const RdfTerm&) = default;
  friend auto operator<=>(const RdfTerm&, const RdfTerm&) = default;
};

struct RdfTriple {
  RdfTerm s, p, o;

  friend bool operator==(const RdfTriple&, const RdfTriple&) = default;
  friend auto operator<=>(const RdfTriple&, const RdfTriple&) = default;
};

/// Builds a triple, rejecting literal subjects and non-URI predicates.
RdfTriple make_triple(RdfTerm s, RdfTerm p, RdfTerm o);

/// All URIs occurring in any position of the triple, deduplicated.
std::set<std::string> uris_of(const RdfTriple& t);

struct Document {
  std::string id;
  std::set<RdfTriple> data;
};

class WebError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A finite set of documents plus a surjective partial map from URIs to
/// documents. Immutable once built; construction validates the invariants.
class WebOfLinkedData {
 public:
  WebOfLinkedData() = default;

  /// Throws WebError on dangling adoc targets, documents unreachable by any
  /// adoc entry, or blank nodes scoped to a foreign document.
  static WebOfLinkedData make(std::vector<Document> docs,
                              std::map<std::string, std::string> adoc);

  const std::map<std::string, Document>& docs() const { return docs_; }
  const std::map<std::string, std::string>& adoc() const { return adoc_; }

  bool retrievable(const std::string& uri) const;
  /// Document retrieved by looking up `uri`, or nullptr when the URI is not
  /// in the domain of adoc.
  const Document* lookup(const std::string& uri) const;
  const Document& doc(const std::string& id) const;

  /// All RDF terms occurring in any triple of any document.
  std::set<RdfTerm> terms() const;
  /// All URIs occurring in any triple of any document.
  std::set<std::string> data_uris() const;

 private:
  std::map<std::string, Document> docs_;
  std::map<std::string, std::string> adoc_;
};

struct LinkGraphEdge {
  std::string src;
  RdfTriple triple;
  std::string via;
  std::string tgt;

  friend bool operator==(const LinkGraphEdge&, const LinkGraphEdge&) = default;
  friend auto operator<=>(const LinkGraphEdge&, const LinkGraphEdge&) = default;
};

std::set<LinkGraphEdge> link_graph(const WebOfLinkedData& w);

/// One slot of a link pattern: a constant term, the context marker `+`, or
/// the wildcard `_`.
struct LinkPatternSlot {
  enum class Kind { Term, Context, Wildcard };

  Kind kind = Kind::Wildcard;
  RdfTerm term;  // Kind::Term only

  static LinkPatternSlot context() { return {Kind::Context, {}}; }
  static LinkPatternSlot wildcard() { return {Kind::Wildcard, {}}; }
  static LinkPatternSlot of(RdfTerm t) { return {Kind::Term, std::move(t)}; }

  friend bool operator==(const LinkPatternSlot&, const LinkPatternSlot&) = default;
  friend auto operator<=>(const LinkPatternSlot&, const LinkPatternSlot&) = default;
};

struct LinkPattern {
  LinkPatternSlot s, p, o;

  friend bool operator==(const LinkPattern&, const LinkPattern&) = default;
  friend auto operator<=>(const LinkPattern&, const LinkPattern&) = default;
};

/// Rejects literal terms in subject/predicate slots and blank nodes anywhere.
LinkPattern make_link_pattern(LinkPatternSlot s, LinkPatternSlot p, LinkPatternSlot o);

/// Whether a link graph edge labeled (triple, via) matches `lp` in the
/// context of `ctx`: some wildcard slot must equal `via`, and every slot must
/// agree with the triple (`+` as `ctx`, constants exactly, `_` freely).
bool matches(const RdfTriple& triple, const std::string& via,
             const LinkPattern& lp, const std::string& ctx);

struct RdfDataset {
  std::set<RdfTriple> default_graph;
  std::map<std::string, std::set<RdfTriple>> named;
};

/// Default graph is the union of data(adoc(u)) over u in `uris`; one named
/// graph per such u. URIs outside dom(adoc) are skipped.
RdfDataset build_dataset(const WebOfLinkedData& w, const std::set<std::string>& uris);

class FixtureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Loads a web fixture. Line-oriented format:
///
///   #doc <doc-id>
///   <s> <p> <o> .          (terms: <uri>, _:label, "literal")
///   #adoc
///   <uri> <doc-id>
///
/// `%` starts a comment. Blank-node labels are scoped to the enclosing #doc
/// section and may not repeat across documents.
WebOfLinkedData load_web(std::istream& in);
WebOfLinkedData load_web_file(const std::string& path);

void save_web(const WebOfLinkedData& w, std::ostream& out);

/// Parses a section of N-Triples-style statement lines (no #doc/#adoc
/// headers). Used by the fixture loader and the HTTP backend.
std::set<RdfTriple> parse_ntriples(const std::string& body, const std::string& doc_id);

}  // namespace ldql

#endif
