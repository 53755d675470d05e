#include "ldql/rdf.h"

#include <fstream>
#include <sstream>

namespace ldql {

RdfTerm RdfTerm::uri(std::string u) {
  if (u.empty()) throw WebError("empty URI");
  return {Kind::Uri, std::move(u), {}};
}

RdfTerm RdfTerm::blank(std::string label, std::string scope) {
  return {Kind::Blank, std::move(label), std::move(scope)};
}

RdfTerm RdfTerm::literal(std::string lex) {
  return {Kind::Literal, std::move(lex), {}};
}

RdfTriple make_triple(RdfTerm s, RdfTerm p, RdfTerm o) {
  if (s.is_literal()) throw WebError("triple subject may not be a literal");
  if (!p.is_uri()) throw WebError("triple predicate must be a URI");
  return {std::move(s), std::move(p), std::move(o)};
}

std::set<std::string> uris_of(const RdfTriple& t) {
  std::set<std::string> out;
  for (const RdfTerm* term : {&t.s, &t.p, &t.o}) {
    if (term->is_uri()) out.insert(term->value);
  }
  return out;
}

WebOfLinkedData WebOfLinkedData::make(std::vector<Document> docs,
                                      std::map<std::string, std::string> adoc) {
  WebOfLinkedData w;
  for (auto& d : docs) {
    if (d.id.empty()) throw WebError("document with empty id");
    for (const auto& t : d.data) {
      for (const RdfTerm* term : {&t.s, &t.p, &t.o}) {
        if (term->is_blank() && term->scope != d.id) {
          throw WebError("blank node _:" + term->value + " in document " + d.id +
                         " scoped to foreign document " + term->scope);
        }
      }
    }
    if (!w.docs_.emplace(d.id, std::move(d)).second) {
      throw WebError("duplicate document id");
    }
  }
  std::set<std::string> referenced;
  for (const auto& [uri, doc_id] : adoc) {
    if (!w.docs_.count(doc_id)) {
      throw WebError("adoc maps <" + uri + "> to unknown document " + doc_id);
    }
    referenced.insert(doc_id);
  }
  for (const auto& [id, d] : w.docs_) {
    if (!referenced.count(id)) {
      throw WebError("document " + id + " is not the image of any adoc entry");
    }
  }
  w.adoc_ = std::move(adoc);
  return w;
}

bool WebOfLinkedData::retrievable(const std::string& uri) const {
  return adoc_.count(uri) != 0;
}

const Document* WebOfLinkedData::lookup(const std::string& uri) const {
  auto it = adoc_.find(uri);
  if (it == adoc_.end()) return nullptr;
  return &docs_.at(it->second);
}

const Document& WebOfLinkedData::doc(const std::string& id) const {
  return docs_.at(id);
}

std::set<RdfTerm> WebOfLinkedData::terms() const {
  std::set<RdfTerm> out;
  for (const auto& [id, d] : docs_) {
    for (const auto& t : d.data) {
      out.insert(t.s);
      out.insert(t.p);
      out.insert(t.o);
    }
  }
  return out;
}

std::set<std::string> WebOfLinkedData::data_uris() const {
  std::set<std::string> out;
  for (const auto& [id, d] : docs_) {
    for (const auto& t : d.data) {
      auto us = uris_of(t);
      out.insert(us.begin(), us.end());
    }
  }
  return out;
}

std::set<LinkGraphEdge> link_graph(const WebOfLinkedData& w) {
  std::set<LinkGraphEdge> edges;
  for (const auto& [id, d] : w.docs()) {
    for (const auto& t : d.data) {
      for (const auto& uri : uris_of(t)) {
        auto it = w.adoc().find(uri);
        if (it != w.adoc().end()) {
          edges.insert(LinkGraphEdge{id, t, uri, it->second});
        }
      }
    }
  }
  return edges;
}

LinkPattern make_link_pattern(LinkPatternSlot s, LinkPatternSlot p, LinkPatternSlot o) {
  for (const LinkPatternSlot* slot : {&s, &p, &o}) {
    if (slot->kind == LinkPatternSlot::Kind::Term && slot->term.is_blank()) {
      throw WebError("link pattern slots may not hold blank nodes");
    }
  }
  if (s.kind == LinkPatternSlot::Kind::Term && s.term.is_literal()) {
    throw WebError("link pattern subject may not be a literal");
  }
  if (p.kind == LinkPatternSlot::Kind::Term && p.term.is_literal()) {
    throw WebError("link pattern predicate may not be a literal");
  }
  return {std::move(s), std::move(p), std::move(o)};
}

namespace {

bool slot_agrees(const LinkPatternSlot& y, const RdfTerm& x, const std::string& ctx) {
  switch (y.kind) {
    case LinkPatternSlot::Kind::Wildcard:
      return true;
    case LinkPatternSlot::Kind::Context:
      return x.is_uri() && x.value == ctx;
    case LinkPatternSlot::Kind::Term:
      return x == y.term;
  }
  return false;
}

}  // namespace

bool matches(const RdfTriple& triple, const std::string& via,
             const LinkPattern& lp, const std::string& ctx) {
  const RdfTerm* xs[3] = {&triple.s, &triple.p, &triple.o};
  const LinkPatternSlot* ys[3] = {&lp.s, &lp.p, &lp.o};
  bool wildcard_hits_via = false;
  for (int i = 0; i < 3; ++i) {
    if (!slot_agrees(*ys[i], *xs[i], ctx)) return false;
    if (ys[i]->kind == LinkPatternSlot::Kind::Wildcard && xs[i]->is_uri() &&
        xs[i]->value == via) {
      wildcard_hits_via = true;
    }
  }
  return wildcard_hits_via;
}

RdfDataset build_dataset(const WebOfLinkedData& w, const std::set<std::string>& uris) {
  RdfDataset ds;
  for (const auto& uri : uris) {
    const Document* d = w.lookup(uri);
    if (!d) continue;
    ds.default_graph.insert(d->data.begin(), d->data.end());
    ds.named.emplace(uri, d->data);
  }
  return ds;
}

// ---------------------------------------------------------------------------
// Fixture format
// ---------------------------------------------------------------------------

namespace {

struct LineReader {
  std::istream& in;
  int line_no = 0;

  bool next(std::string& out) {
    while (std::getline(in, out)) {
      ++line_no;
      auto cut = out.find('%');
      if (cut != std::string::npos) out.erase(cut);
      size_t b = out.find_first_not_of(" \t\r\n");
      if (b == std::string::npos) continue;
      size_t e = out.find_last_not_of(" \t\r\n");
      out = out.substr(b, e - b + 1);
      return true;
    }
    return false;
  }
};

[[noreturn]] void fail(int line, const std::string& msg) {
  throw FixtureError("fixture line " + std::to_string(line) + ": " + msg);
}

// Parses one term starting at pos; advances pos past it.
RdfTerm parse_term(const std::string& s, size_t& pos, const std::string& doc_id, int line) {
  while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  if (pos >= s.size()) fail(line, "expected term");
  if (s[pos] == '<') {
    auto end = s.find('>', pos);
    if (end == std::string::npos) fail(line, "unterminated URI");
    std::string uri = s.substr(pos + 1, end - pos - 1);
    if (uri.empty()) fail(line, "empty URI");
    pos = end + 1;
    return RdfTerm::uri(uri);
  }
  if (s[pos] == '_' && pos + 1 < s.size() && s[pos + 1] == ':') {
    size_t end = pos + 2;
    while (end < s.size() && s[end] != ' ' && s[end] != '\t') ++end;
    std::string label = s.substr(pos + 2, end - pos - 2);
    if (label.empty()) fail(line, "empty blank node label");
    pos = end;
    return RdfTerm::blank(label, doc_id);
  }
  if (s[pos] == '"') {
    std::string lex;
    size_t i = pos + 1;
    for (; i < s.size(); ++i) {
      if (s[i] == '\\') {
        if (i + 1 >= s.size()) fail(line, "dangling escape in literal");
        char c = s[++i];
        switch (c) {
          case 'n': lex.push_back('\n'); break;
          case 't': lex.push_back('\t'); break;
          case '"': lex.push_back('"'); break;
          case '\\': lex.push_back('\\'); break;
          default: fail(line, "unknown escape in literal");
        }
      } else if (s[i] == '"') {
        break;
      } else {
        lex.push_back(s[i]);
      }
    }
    if (i >= s.size()) fail(line, "unterminated literal");
    pos = i + 1;
    return RdfTerm::literal(lex);
  }
  fail(line, "unrecognized term syntax");
}

RdfTriple parse_triple_line(const std::string& s, const std::string& doc_id, int line) {
  size_t pos = 0;
  RdfTerm subj = parse_term(s, pos, doc_id, line);
  RdfTerm pred = parse_term(s, pos, doc_id, line);
  RdfTerm obj = parse_term(s, pos, doc_id, line);
  while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  if (pos >= s.size() || s[pos] != '.') fail(line, "statement must end with '.'");
  ++pos;
  while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  if (pos != s.size()) fail(line, "trailing content after '.'");
  try {
    return make_triple(std::move(subj), std::move(pred), std::move(obj));
  } catch (const WebError& e) {
    fail(line, e.what());
  }
}

std::string unparse_term(const RdfTerm& t) {
  switch (t.kind) {
    case RdfTerm::Kind::Uri:
      return "<" + t.value + ">";
    case RdfTerm::Kind::Blank:
      return "_:" + t.value;
    case RdfTerm::Kind::Literal: {
      std::string out = "\"";
      for (char c : t.value) {
        switch (c) {
          case '"': out += "\\\""; break;
          case '\\': out += "\\\\"; break;
          case '\n': out += "\\n"; break;
          case '\t': out += "\\t"; break;
          default: out.push_back(c);
        }
      }
      out.push_back('"');
      return out;
    }
  }
  return {};
}

}  // namespace

std::set<RdfTriple> parse_ntriples(const std::string& body, const std::string& doc_id) {
  std::istringstream in(body);
  LineReader reader{in};
  std::set<RdfTriple> data;
  std::string line;
  while (reader.next(line)) {
    data.insert(parse_triple_line(line, doc_id, reader.line_no));
  }
  return data;
}

WebOfLinkedData load_web(std::istream& in) {
  LineReader reader{in};
  std::vector<Document> docs;
  std::map<std::string, std::string> adoc;
  std::map<std::string, std::string> blank_owner;  // label -> doc id
  Document* current = nullptr;
  bool in_adoc = false;
  std::string line;
  while (reader.next(line)) {
    if (line.rfind("#doc", 0) == 0) {
      if (in_adoc) fail(reader.line_no, "#doc section after #adoc");
      std::istringstream hdr(line.substr(4));
      std::string id, extra;
      if (!(hdr >> id) || (hdr >> extra)) fail(reader.line_no, "expected '#doc <doc-id>'");
      docs.push_back(Document{id, {}});
      current = &docs.back();
      continue;
    }
    if (line == "#adoc") {
      in_adoc = true;
      current = nullptr;
      continue;
    }
    if (in_adoc) {
      size_t pos = 0;
      RdfTerm uri = parse_term(line, pos, "", reader.line_no);
      if (!uri.is_uri()) fail(reader.line_no, "adoc entry must start with a URI");
      std::istringstream rest(line.substr(pos));
      std::string doc_id, extra;
      if (!(rest >> doc_id) || (rest >> extra)) fail(reader.line_no, "expected '<uri> <doc-id>'");
      if (!adoc.emplace(uri.value, doc_id).second) {
        fail(reader.line_no, "duplicate adoc entry for <" + uri.value + ">");
      }
      continue;
    }
    if (!current) fail(reader.line_no, "statement outside any #doc section");
    RdfTriple t = parse_triple_line(line, current->id, reader.line_no);
    for (const RdfTerm* term : {&t.s, &t.o}) {
      if (!term->is_blank()) continue;
      auto [it, fresh] = blank_owner.emplace(term->value, current->id);
      if (!fresh && it->second != current->id) {
        fail(reader.line_no, "blank node label _:" + term->value +
                                 " reused across documents " + it->second + " and " +
                                 current->id);
      }
    }
    current->data.insert(std::move(t));
  }
  try {
    return WebOfLinkedData::make(std::move(docs), std::move(adoc));
  } catch (const WebError& e) {
    throw FixtureError(e.what());
  }
}

WebOfLinkedData load_web_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FixtureError("cannot open fixture: " + path);
  return load_web(in);
}

void save_web(const WebOfLinkedData& w, std::ostream& out) {
  for (const auto& [id, d] : w.docs()) {
    out << "#doc " << id << "\n";
    for (const auto& t : d.data) {
      out << unparse_term(t.s) << " " << unparse_term(t.p) << " " << unparse_term(t.o)
          << " .\n";
    }
  }
  out << "#adoc\n";
  for (const auto& [uri, doc_id] : w.adoc()) {
    out << "<" << uri << "> " << doc_id << "\n";
  }
}

}  // namespace ldql
