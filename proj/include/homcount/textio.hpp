#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "homcount/error.hpp"
#include "homcount/profinite.hpp"
#include "homcount/sigstruct.hpp"
#include "homcount/trees.hpp"

namespace homcount {

// Block-structured text files holding structures, trees, tree specs, groups
// and towers. `#` starts a comment; every block ends with `end`.
//
//   signature E/2 R/3
//   structure NAME size 4
//   E: (0,1) (1,2)
//   end
//
//   tree NAME size 5 parents - 0 0 1 1 end
//   rtree NAME states 2 start 0 children 0 1 ; 1 ; end
//   group NAME order 2 table 0 1 / 1 0 end
//   group NAME cyclic 8 end
//   group NAME product A B end
//   tower NAME levels A B maps 0 1 0 1 end
//
// A signature line applies to all later structure blocks. In towers, maps
// are listed bottom-up (level 1 → level 0 first) and separated by '/'.

template <class T>
struct Named {
  std::string name;
  T value;
};

struct Document {
  std::vector<Named<Structure>> structures;
  std::vector<Named<FiniteTree>> trees;
  std::vector<Named<RationalTreeSpec>> tree_specs;
  std::vector<Named<FiniteGroup>> groups;
  std::vector<Named<Tower>> towers;
};

namespace detail {

struct Token {
  std::string text;
  std::size_t line;
};

inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    const char ch = text[i];
    if (ch == '\n') {
      ++line;
      ++i;
    } else if (ch == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
    } else if (ch == '(') {
      // A tuple runs to the closing parenthesis and may contain blanks.
      const std::size_t start_line = line;
      std::string tok;
      while (i < text.size() && text[i] != ')') {
        if (text[i] == '\n' || text[i] == '#') throw ParseError(start_line, "unterminated tuple");
        if (!std::isspace(static_cast<unsigned char>(text[i]))) tok.push_back(text[i]);
        ++i;
      }
      if (i == text.size()) throw ParseError(start_line, "unterminated tuple");
      tok.push_back(')');
      ++i;
      out.push_back({std::move(tok), start_line});
    } else {
      std::string tok;
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '#' &&
             text[i] != '(')
        tok.push_back(text[i++]);
      out.push_back({std::move(tok), line});
    }
  }
  return out;
}

class Cursor {
 public:
  explicit Cursor(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  bool done() const { return pos_ >= tokens_.size(); }
  const Token& peek() const { return tokens_[pos_]; }
  std::size_t line() const {
    if (tokens_.empty()) return 1;
    return done() ? tokens_.back().line : tokens_[pos_].line;
  }

  const Token& next(std::string_view what) {
    if (done()) throw ParseError(line(), "unexpected end of input, expected " + std::string(what));
    return tokens_[pos_++];
  }

  void expect(std::string_view word) {
    const auto& t = next("'" + std::string(word) + "'");
    if (t.text != word) throw ParseError(t.line, "expected '" + std::string(word) + "', got '" + t.text + "'");
  }

  std::uint64_t number(std::string_view what) {
    const auto& t = next(what);
    return parse_number(t, what);
  }

  static std::uint64_t parse_number(const Token& t, std::string_view what) {
    if (t.text.empty() || t.text.size() > 18 ||
        !std::all_of(t.text.begin(), t.text.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw ParseError(t.line, "expected " + std::string(what) + ", got '" + t.text + "'");
    return std::stoull(t.text);
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

inline bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
  });
}

inline std::string block_name(Cursor& cur) {
  const auto& t = cur.next("a name");
  if (!is_identifier(t.text)) throw ParseError(t.line, "invalid name '" + t.text + "'");
  return t.text;
}

inline SignaturePtr parse_signature(Cursor& cur, std::size_t line) {
  std::vector<Symbol> symbols;
  while (!cur.done() && cur.peek().line == line) {
    const auto& t = cur.next("a symbol");
    const auto slash = t.text.find('/');
    if (slash == std::string::npos) throw ParseError(t.line, "expected NAME/ARITY, got '" + t.text + "'");
    const std::string name = t.text.substr(0, slash);
    if (!is_identifier(name)) throw ParseError(t.line, "invalid symbol name '" + name + "'");
    const Token arity_tok{t.text.substr(slash + 1), t.line};
    const auto arity = Cursor::parse_number(arity_tok, "an arity");
    if (arity == 0 || arity > 16) throw ParseError(t.line, "arity of '" + name + "' must be in 1..16");
    for (const auto& s : symbols)
      if (s.name == name) throw ParseError(t.line, "duplicate symbol '" + name + "'");
    symbols.push_back({name, static_cast<unsigned>(arity)});
  }
  return make_signature(std::move(symbols));
}

inline Structure parse_structure_body(Cursor& cur, const SignaturePtr& sig, std::size_t size) {
  std::vector<std::vector<Tuple>> rels(sig->size());
  std::vector<std::vector<std::uint64_t>> seen(sig->size());
  std::optional<std::size_t> current;
  while (true) {
    const auto& t = cur.next("'end'");
    if (t.text == "end") break;
    if (t.text.back() == ':') {
      const std::string name = t.text.substr(0, t.text.size() - 1);
      current = sig->find(name);
      if (!current) throw ParseError(t.line, "unknown relation symbol '" + name + "'");
      continue;
    }
    if (t.text.front() != '(') throw ParseError(t.line, "expected a tuple or 'SYMBOL:', got '" + t.text + "'");
    if (!current) throw ParseError(t.line, "tuple before any relation symbol");
    const unsigned arity = (*sig)[*current].arity;
    Tuple tuple;
    std::string inner = t.text.substr(1, t.text.size() - 2);
    std::stringstream ss(inner);
    std::string part;
    while (std::getline(ss, part, ',')) {
      const auto v = Cursor::parse_number({part, t.line}, "an element index");
      if (v >= size)
        throw ParseError(t.line, "element " + std::to_string(v) + " out of range for size " + std::to_string(size));
      tuple.push_back(static_cast<Element>(v));
    }
    if (!inner.empty() && inner.back() == ',') throw ParseError(t.line, "trailing comma in tuple");
    if (tuple.size() != arity)
      throw ParseError(t.line, "tuple " + t.text + " has length " + std::to_string(tuple.size()) + " but '" +
                                   (*sig)[*current].name + "' has arity " + std::to_string(arity));
    std::uint64_t code = 0;
    for (auto e : tuple) code = code * size + e;
    if (std::find(seen[*current].begin(), seen[*current].end(), code) != seen[*current].end())
      throw ParseError(t.line, "duplicate tuple " + t.text);
    seen[*current].push_back(code);
    rels[*current].push_back(std::move(tuple));
  }
  return Structure(sig, size, rels);
}

}  // namespace detail

inline Document parse_document(std::string_view text) {
  using detail::Cursor;
  Cursor cur(detail::tokenize(text));
  Document doc;
  SignaturePtr sig;
  std::map<std::string, std::size_t> group_index;
  std::set<std::pair<std::string, std::string>> names;
  auto claim = [&](const std::string& kind, const std::string& name, std::size_t line) {
    if (!names.emplace(kind, name).second) throw ParseError(line, "duplicate " + kind + " name '" + name + "'");
  };
  auto find_group = [&](const detail::Token& t) -> const FiniteGroup& {
    auto it = group_index.find(t.text);
    if (it == group_index.end()) throw ParseError(t.line, "unknown group '" + t.text + "'");
    return doc.groups[it->second].value;
  };
  while (!cur.done()) {
    const auto kw = cur.next("a block");
    if (kw.text == "signature") {
      sig = detail::parse_signature(cur, kw.line);
    } else if (kw.text == "structure") {
      if (!sig) throw ParseError(kw.line, "structure block before any signature line");
      auto name = detail::block_name(cur);
      claim("structure", name, kw.line);
      cur.expect("size");
      const auto size = cur.number("a size");
      if (size > 1'000'000) throw ParseError(kw.line, "structure size too large");
      try {
        doc.structures.push_back({name, detail::parse_structure_body(cur, sig, size)});
      } catch (const LimitExceeded& e) {
        throw ParseError(kw.line, e.what());
      }
    } else if (kw.text == "tree") {
      auto name = detail::block_name(cur);
      claim("tree", name, kw.line);
      cur.expect("size");
      const auto size = cur.number("a size");
      cur.expect("parents");
      std::vector<std::uint32_t> parent;
      for (std::uint64_t i = 0; i < size; ++i) {
        const auto& t = cur.next("a parent index");
        if (t.text == "-")
          parent.push_back(FiniteTree::kNoParent);
        else
          parent.push_back(static_cast<std::uint32_t>(Cursor::parse_number(t, "a parent index or '-'")));
      }
      cur.expect("end");
      try {
        doc.trees.push_back({name, FiniteTree(std::move(parent))});
      } catch (const InvalidArgument& e) {
        throw ParseError(kw.line, e.what());
      }
    } else if (kw.text == "rtree") {
      auto name = detail::block_name(cur);
      claim("rtree", name, kw.line);
      RationalTreeSpec spec;
      cur.expect("states");
      const auto states = cur.number("a state count");
      if (states == 0 || states > 1'000'000) throw ParseError(kw.line, "state count must be in 1..10^6");
      cur.expect("start");
      spec.start = cur.number("a start state");
      cur.expect("children");
      spec.children.assign(states, {});
      std::size_t s = 0;
      while (true) {
        const auto& t = cur.next("'end'");
        if (t.text == "end") break;
        if (t.text == ";") {
          if (++s > states) throw ParseError(t.line, "more child lists than states");
          continue;
        }
        if (s >= states) throw ParseError(t.line, "more child lists than states");
        const auto v = Cursor::parse_number(t, "a state");
        if (v >= states) throw ParseError(t.line, "state " + std::to_string(v) + " out of range");
        spec.children[s].push_back(v);
      }
      try {
        validate(spec);
      } catch (const InvalidArgument& e) {
        throw ParseError(kw.line, e.what());
      }
      doc.tree_specs.push_back({name, std::move(spec)});
    } else if (kw.text == "group") {
      auto name = detail::block_name(cur);
      claim("group", name, kw.line);
      const auto& how = cur.next("'order', 'cyclic' or 'product'");
      std::optional<FiniteGroup> g;
      try {
        if (how.text == "order") {
          const auto n = cur.number("a group order");
          if (n == 0 || n > 4096) throw ParseError(how.line, "group order must be in 1..4096");
          cur.expect("table");
          std::vector<std::uint32_t> table;
          for (std::uint64_t row = 0; row < n; ++row) {
            if (row > 0) cur.expect("/");
            for (std::uint64_t col = 0; col < n; ++col) {
              const auto v = cur.number("a table entry");
              if (v >= n) throw ParseError(cur.line(), "table entry " + std::to_string(v) + " out of range");
              table.push_back(static_cast<std::uint32_t>(v));
            }
          }
          cur.expect("end");
          g.emplace(std::move(table), name);
        } else if (how.text == "cyclic") {
          const auto n = cur.number("a group order");
          if (n == 0 || n > 4096) throw ParseError(how.line, "group order must be in 1..4096");
          cur.expect("end");
          g = cyclic_group(n);
        } else if (how.text == "product") {
          const auto& a = find_group(cur.next("a group name"));
          const auto& b = find_group(cur.next("a group name"));
          if (a.order() * b.order() > 4096) throw ParseError(how.line, "product order exceeds 4096");
          g = direct_product(a, b);
          cur.expect("end");
        } else {
          throw ParseError(how.line, "expected 'order', 'cyclic' or 'product', got '" + how.text + "'");
        }
      } catch (const InvalidArgument& e) {
        throw ParseError(kw.line, e.what());
      }
      g->set_name(name);
      if (group_index.count(name)) throw ParseError(kw.line, "duplicate group name '" + name + "'");
      group_index[name] = doc.groups.size();
      doc.groups.push_back({name, std::move(*g)});
    } else if (kw.text == "tower") {
      auto name = detail::block_name(cur);
      claim("tower", name, kw.line);
      cur.expect("levels");
      std::vector<FiniteGroup> levels;
      while (!cur.done() && cur.peek().text != "maps" && cur.peek().text != "end")
        levels.push_back(find_group(cur.next("a group name")));
      if (levels.empty()) throw ParseError(kw.line, "tower without levels");
      std::vector<std::vector<std::uint32_t>> maps;
      if (levels.size() > 1) {
        cur.expect("maps");
        for (std::size_t i = 1; i < levels.size(); ++i) {
          if (i > 1) cur.expect("/");
          std::vector<std::uint32_t> map;
          for (std::size_t x = 0; x < levels[i].order(); ++x) {
            const auto v = cur.number("a map value");
            if (v >= levels[i - 1].order()) throw ParseError(cur.line(), "map value out of range");
            map.push_back(static_cast<std::uint32_t>(v));
          }
          maps.push_back(std::move(map));
        }
      }
      cur.expect("end");
      try {
        doc.towers.push_back({name, Tower(std::move(levels), std::move(maps), name)});
      } catch (const InvalidArgument& e) {
        throw ParseError(kw.line, e.what());
      }
    } else {
      throw ParseError(kw.line, "unknown block keyword '" + kw.text + "'");
    }
  }
  return doc;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// `path` or `path:NAME`; the latter selects a block by name.
struct FileRef {
  std::string path;
  std::optional<std::string> name;

  static FileRef parse(const std::string& arg) {
    const auto colon = arg.rfind(':');
    if (colon != std::string::npos && colon + 1 < arg.size() && colon > 0 &&
        detail::is_identifier(arg.substr(colon + 1)) && arg.find('/', colon) == std::string::npos)
      return {arg.substr(0, colon), arg.substr(colon + 1)};
    return {arg, std::nullopt};
  }
};

template <class T>
const Named<T>& select_block(const std::vector<Named<T>>& blocks, const FileRef& ref, std::string_view kind) {
  if (ref.name) {
    for (const auto& b : blocks)
      if (b.name == *ref.name) return b;
    throw InvalidArgument("no " + std::string(kind) + " named '" + *ref.name + "' in '" + ref.path + "'");
  }
  if (blocks.empty()) throw InvalidArgument("no " + std::string(kind) + " in '" + ref.path + "'");
  return blocks.front();
}

// ---------------------------------------------------------------------------
// Writers

inline void write_structure(std::ostream& os, const Structure& a, std::string_view name, bool with_signature = true) {
  if (with_signature) os << "signature " << a.signature().to_string() << '\n';
  os << "structure " << name << " size " << a.size() << '\n';
  for (std::size_t r = 0; r < a.relation_count(); ++r) {
    const auto& rel = a.relation(r);
    if (rel.empty()) continue;
    os << a.signature()[r].name << ':';
    for (std::size_t i = 0; i < rel.size(); ++i) {
      os << " (";
      auto t = rel.tuple(i);
      for (std::size_t k = 0; k < t.size(); ++k) os << (k ? "," : "") << t[k];
      os << ')';
    }
    os << '\n';
  }
  os << "end\n";
}

inline void write_tree(std::ostream& os, const FiniteTree& t, std::string_view name) {
  os << "tree " << name << " size " << t.size() << " parents";
  for (std::size_t v = 0; v < t.size(); ++v) {
    if (t.parent(v) == FiniteTree::kNoParent)
      os << " -";
    else
      os << ' ' << t.parent(v);
  }
  os << " end\n";
}

inline void write_group(std::ostream& os, const FiniteGroup& g, std::string_view name) {
  os << "group " << name << " order " << g.order() << " table";
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (x) os << " /";
    for (std::size_t y = 0; y < g.order(); ++y)
      os << ' ' << g.mul(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y));
  }
  os << " end\n";
}

}  // namespace homcount
