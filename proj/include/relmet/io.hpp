#pragma once

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "relmet/metric.hpp"
#include "relmet/poset.hpp"
#include "relmet/props.hpp"
#include "relmet/relset.hpp"

namespace relmet {

/// Syntax or resolution error with the position of the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(unsigned line, unsigned col, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ", col " +
                           std::to_string(col) + ": " + msg),
        line_(line),
        col_(col) {}

  unsigned line() const { return line_; }
  unsigned col() const { return col_; }

 private:
  unsigned line_;
  unsigned col_;
};

/// Named objects loaded from one or more fixture files. Names are unique
/// per kind and references resolve while loading.
struct Workspace {
  struct NamedFamily {
    std::string ground;
    std::vector<std::string> names;
    std::vector<Relation> members;
  };

  std::map<std::string, GroundSet> grounds;
  std::map<std::string, Relation> relations;
  std::map<std::string, std::string> relation_ground;  // relation name -> ground name
  std::map<std::string, Poset> posets;
  std::map<std::string, GenMetric> metrics;
  std::map<std::string, std::pair<std::string, std::string>> metric_refs;  // ground, poset
  std::map<std::string, NamedFamily> families;
  std::map<std::string, NamedFamily> structures;  // generator families
  std::map<std::string, NamedFamily> uniforms;    // base families
  std::map<std::string, SpaceMap> maps;
};

namespace detail {

struct Token {
  std::string text;
  unsigned col;
};

inline std::vector<Token> split_tokens(const std::string& line) {
  std::vector<Token> out;
  unsigned col = 1;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    out.push_back(Token{line.substr(start, i - start), static_cast<unsigned>(start + 1)});
    (void)col;
  }
  return out;
}

inline unsigned parse_number(const Token& t, unsigned line, unsigned limit) {
  unsigned v = 0;
  if (t.text.empty()) throw ParseError(line, t.col, "expected a number");
  for (char c : t.text) {
    if (c < '0' || c > '9')
      throw ParseError(line, t.col, "expected a number, got '" + t.text + "'");
    v = v * 10 + static_cast<unsigned>(c - '0');
    if (v > limit) throw ParseError(line, t.col, "number out of range");
  }
  return v;
}

class SectionReader {
 public:
  SectionReader(std::istream& in, unsigned& line_no) : in_(in), line_no_(line_no) {}

  /// Next non-empty, non-comment token line; empty at end of input.
  std::vector<Token> next() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      auto toks = split_tokens(line);
      if (toks.empty() || toks[0].text[0] == '#') continue;
      return toks;
    }
    return {};
  }

 private:
  std::istream& in_;
  unsigned& line_no_;
};

}  // namespace detail

/// Parse fixture text into the workspace. Stops with a ParseError carrying
/// the line and column of the first problem.
inline void parse_into(Workspace& ws, std::istream& in) {
  using detail::parse_number;
  using detail::Token;
  unsigned line_no = 0;
  detail::SectionReader reader(in, line_no);

  auto need = [&](const std::vector<Token>& toks, std::size_t k,
                  const std::string& what) -> const Token& {
    if (k >= toks.size())
      throw ParseError(line_no, toks.empty() ? 1 : toks.back().col, "expected " + what);
    return toks[k];
  };
  auto keyword = [&](const std::vector<Token>& toks, std::size_t k, const std::string& kw) {
    const Token& t = need(toks, k, "'" + kw + "'");
    if (t.text != kw) throw ParseError(line_no, t.col, "expected '" + kw + "'");
  };
  auto fresh = [&](const auto& map, const Token& name, const std::string& kind) {
    if (map.contains(name.text))
      throw ParseError(line_no, name.col, "duplicate " + kind + " name '" + name.text + "'");
  };
  auto ground_of = [&](const Token& name) -> const GroundSet& {
    auto it = ws.grounds.find(name.text);
    if (it == ws.grounds.end())
      throw ParseError(line_no, name.col, "unknown ground set '" + name.text + "'");
    return it->second;
  };
  auto relation_of = [&](const Token& name) -> const Relation& {
    auto it = ws.relations.find(name.text);
    if (it == ws.relations.end())
      throw ParseError(line_no, name.col, "unknown relation '" + name.text + "'");
    return it->second;
  };

  for (;;) {
    auto head = reader.next();
    if (head.empty()) return;
    const std::string& kind = head[0].text;

    if (kind == "ground") {
      const Token& name = need(head, 1, "a name");
      fresh(ws.grounds, name, "ground");
      auto elems = reader.next();
      keyword(elems, 0, "elems");
      unsigned n = parse_number(need(elems, 1, "a size"), line_no, 64);
      if (n < 1) throw ParseError(line_no, elems[1].col, "ground set must be non-empty");
      if (n > caps().ground)
        throw ParseError(line_no, elems[1].col, "ground set exceeds the configured cap");
      std::vector<std::string> labels(n);
      bool labeled = false;
      for (;;) {
        auto toks = reader.next();
        if (toks.empty()) throw ParseError(line_no, 1, "unexpected end of input in section");
        if (toks[0].text == "end") break;
        keyword(toks, 0, "label");
        unsigned i = parse_number(need(toks, 1, "an element"), line_no, n - 1);
        labels[i] = need(toks, 2, "a label").text;
        labeled = true;
      }
      if (labeled) {
        for (unsigned i = 0; i < n; ++i)
          if (labels[i].empty())
            throw ParseError(line_no, 1, "element " + std::to_string(i) + " has no label");
        ws.grounds.emplace(name.text, GroundSet(n, std::move(labels)));
      } else {
        ws.grounds.emplace(name.text, GroundSet(n));
      }

    } else if (kind == "relation") {
      const Token& name = need(head, 1, "a name");
      fresh(ws.relations, name, "relation");
      keyword(head, 2, "over");
      const Token& gname = need(head, 3, "a ground name");
      const GroundSet& g = ground_of(gname);
      std::vector<ElemSet> rows(g.size(), 0);
      for (;;) {
        auto toks = reader.next();
        if (toks.empty()) throw ParseError(line_no, 1, "unexpected end of input in section");
        if (toks[0].text == "end") break;
        unsigned i = parse_number(toks[0], line_no, g.size() - 1);
        unsigned j = parse_number(need(toks, 1, "a second element"), line_no, g.size() - 1);
        rows[i] |= ElemSet{1} << j;
      }
      ws.relations.emplace(name.text, Relation(g, std::move(rows)));
      ws.relation_ground.emplace(name.text, gname.text);

    } else if (kind == "poset") {
      const Token& name = need(head, 1, "a name");
      fresh(ws.posets, name, "poset");
      auto elems = reader.next();
      keyword(elems, 0, "elems");
      unsigned m = parse_number(need(elems, 1, "a size"), line_no, 4096);
      std::vector<std::pair<unsigned, unsigned>> pairs;
      for (;;) {
        auto toks = reader.next();
        if (toks.empty()) throw ParseError(line_no, 1, "unexpected end of input in section");
        if (toks[0].text == "end") break;
        unsigned a = parse_number(toks[0], line_no, m - 1);
        keyword(toks, 1, "<=");
        unsigned b = parse_number(need(toks, 2, "a second element"), line_no, m - 1);
        pairs.emplace_back(a, b);
      }
      try {
        ws.posets.emplace(name.text, Poset(m, pairs));
      } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, head[0].col, e.what());
      }

    } else if (kind == "metric") {
      const Token& name = need(head, 1, "a name");
      fresh(ws.metrics, name, "metric");
      keyword(head, 2, "over");
      const GroundSet& g = ground_of(need(head, 3, "a ground name"));
      keyword(head, 4, "index");
      const Token& pname = need(head, 5, "a poset name");
      auto pit = ws.posets.find(pname.text);
      if (pit == ws.posets.end())
        throw ParseError(line_no, pname.col, "unknown poset '" + pname.text + "'");
      const Poset& idx = pit->second;
      if (!idx.zero())
        throw ParseError(line_no, pname.col, "index poset has no smallest element");
      unsigned n = g.size();
      std::vector<std::optional<Ext>> table(static_cast<std::size_t>(n) * n);
      for (unsigned x = 0; x < n; ++x) table[x * n + x] = Ext::fin(*idx.zero());
      for (;;) {
        auto toks = reader.next();
        if (toks.empty()) throw ParseError(line_no, 1, "unexpected end of input in section");
        if (toks[0].text == "end") break;
        unsigned x = parse_number(toks[0], line_no, n - 1);
        unsigned y = parse_number(need(toks, 1, "a second element"), line_no, n - 1);
        const Token& vt = need(toks, 2, "a value");
        Ext v = vt.text == "inf" ? Ext::infinity()
                                 : Ext::fin(parse_number(vt, line_no, idx.size() - 1));
        for (auto slot : {x * n + y, y * n + x}) {
          if (table[slot] && !(*table[slot] == v))
            throw ParseError(line_no, vt.col, "conflicting value for pair (" +
                                                  std::to_string(x) + "," +
                                                  std::to_string(y) + ")");
          table[slot] = v;
        }
      }
      std::vector<Ext> vals(table.size());
      for (unsigned x = 0; x < n; ++x)
        for (unsigned y = 0; y < n; ++y) {
          if (!table[x * n + y])
            throw ParseError(line_no, 1, "pair (" + std::to_string(x) + "," +
                                             std::to_string(y) + ") has no value");
          vals[x * n + y] = *table[x * n + y];
        }
      try {
        ws.metrics.emplace(name.text, GenMetric(g, idx, std::move(vals)));
      } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, head[0].col, e.what());
      }
      ws.metric_refs.emplace(name.text, std::make_pair(head[3].text, pname.text));

    } else if (kind == "family" || kind == "structure" || kind == "uniform") {
      auto& target = kind == "family" ? ws.families
                     : kind == "structure" ? ws.structures
                                           : ws.uniforms;
      const std::string member_kw =
          kind == "family" ? "member" : kind == "structure" ? "generator" : "base";
      const Token& name = need(head, 1, "a name");
      fresh(target, name, kind);
      keyword(head, 2, "over");
      const Token& gname = need(head, 3, "a ground name");
      const GroundSet& g = ground_of(gname);
      Workspace::NamedFamily fam;
      fam.ground = gname.text;
      for (;;) {
        auto toks = reader.next();
        if (toks.empty()) throw ParseError(line_no, 1, "unexpected end of input in section");
        if (toks[0].text == "end") break;
        keyword(toks, 0, member_kw);
        const Token& rname = need(toks, 1, "a relation name");
        const Relation& r = relation_of(rname);
        if (!r.ground().compatible(g))
          throw ParseError(line_no, rname.col,
                           "relation '" + rname.text + "' lives on another ground set");
        fam.names.push_back(rname.text);
        fam.members.push_back(r);
      }
      target.emplace(name.text, std::move(fam));

    } else if (kind == "map") {
      const Token& name = need(head, 1, "a name");
      fresh(ws.maps, name, "map");
      keyword(head, 2, "from");
      const GroundSet& src = ground_of(need(head, 3, "a ground name"));
      keyword(head, 4, "to");
      const GroundSet& tgt = ground_of(need(head, 5, "a ground name"));
      std::vector<std::optional<unsigned>> table(src.size());
      for (;;) {
        auto toks = reader.next();
        if (toks.empty()) throw ParseError(line_no, 1, "unexpected end of input in section");
        if (toks[0].text == "end") break;
        unsigned x = parse_number(toks[0], line_no, src.size() - 1);
        unsigned y = parse_number(need(toks, 1, "an image element"), line_no, tgt.size() - 1);
        if (table[x])
          throw ParseError(line_no, toks[0].col,
                           "element " + std::to_string(x) + " mapped twice");
        table[x] = y;
      }
      std::vector<unsigned> t(src.size());
      for (unsigned x = 0; x < src.size(); ++x) {
        if (!table[x])
          throw ParseError(line_no, 1, "element " + std::to_string(x) + " has no image");
        t[x] = *table[x];
      }
      ws.maps.emplace(name.text, SpaceMap(src, tgt, std::move(t)));

    } else {
      throw ParseError(line_no, head[0].col, "unknown section '" + kind + "'");
    }
  }
}

inline Workspace parse_workspace(std::istream& in) {
  Workspace ws;
  parse_into(ws, in);
  return ws;
}

inline Workspace parse_workspace(const std::string& text) {
  std::istringstream in(text);
  return parse_workspace(in);
}

inline void write_ground(std::ostream& os, const std::string& name, const GroundSet& g) {
  os << "ground " << name << "\n";
  os << "elems " << g.size() << "\n";
  if (g.has_labels())
    for (unsigned i = 0; i < g.size(); ++i) os << "label " << i << " " << g.label(i) << "\n";
  os << "end\n";
}

inline void write_relation(std::ostream& os, const std::string& name,
                           const std::string& ground, const Relation& r) {
  os << "relation " << name << " over " << ground << "\n";
  for (auto [i, j] : r.pairs()) os << i << " " << j << "\n";
  os << "end\n";
}

inline void write_poset(std::ostream& os, const std::string& name, const Poset& p) {
  os << "poset " << name << "\n";
  os << "elems " << p.size() << "\n";
  for (unsigned a = 0; a < p.size(); ++a)
    for (unsigned b = 0; b < p.size(); ++b)
      if (a != b && p.leq(a, b)) os << a << " <= " << b << "\n";
  os << "end\n";
}

inline void write_metric(std::ostream& os, const std::string& name, const std::string& ground,
                         const std::string& poset, const GenMetric& d) {
  os << "metric " << name << " over " << ground << " index " << poset << "\n";
  for (unsigned x = 0; x < d.ground().size(); ++x)
    for (unsigned y = x + 1; y < d.ground().size(); ++y) {
      os << x << " " << y << " ";
      Ext v = d.at(x, y);
      if (v.is_inf())
        os << "inf\n";
      else
        os << v.index() << "\n";
    }
  os << "end\n";
}

}  // namespace relmet
