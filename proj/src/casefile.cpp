#include "sac/casefile.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <map>
#include <set>
#include <tuple>

namespace sac {
namespace casefile {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Lex: return "lex";
    case ErrorKind::Syntax: return "syntax";
    case ErrorKind::Semantic: return "semantic";
  }
  return "?";
}

std::string format_error(const ParseError& e) {
  return std::to_string(e.span.line) + ":" + std::to_string(e.span.column) + ": " +
         to_string(e.kind) + " error: " + e.message;
}

namespace {

bool is_ident(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ||
           c == '-';
  });
}

struct Token {
  std::string text;
  int column = 1;
  bool quoted = false;
};

// One raw input line split into tokens; quoted strings keep their spaces and
// are unescaped here.
struct LineScan {
  std::vector<Token> tokens;
  std::optional<ParseError> error;
};

LineScan scan_line(const std::string& line, int line_no) {
  LineScan out;
  size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ' || line[i] == '\t') {
      ++i;
      continue;
    }
    int col = static_cast<int>(i) + 1;
    if (line[i] == '"') {
      std::string value;
      ++i;
      bool closed = false;
      while (i < line.size()) {
        char c = line[i];
        if (c == '\\') {
          if (i + 1 >= line.size() || (line[i + 1] != '"' && line[i + 1] != '\\')) {
            out.error = {{line_no, static_cast<int>(i) + 1},
                         ErrorKind::Lex,
                         "invalid escape; only \\\" and \\\\ are allowed"};
            return out;
          }
          value.push_back(line[i + 1]);
          i += 2;
          continue;
        }
        if (c == '"') {
          closed = true;
          ++i;
          break;
        }
        value.push_back(c);
        ++i;
      }
      if (!closed) {
        out.error = {{line_no, col}, ErrorKind::Lex, "unterminated quoted string"};
        return out;
      }
      out.tokens.push_back({value, col, true});
      continue;
    }
    size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') {
      if (line[i] == '"') {
        out.error = {{line_no, static_cast<int>(i) + 1},
                     ErrorKind::Lex,
                     "quote in the middle of a token"};
        return out;
      }
      ++i;
    }
    out.tokens.push_back({line.substr(start, i - start), col, false});
  }
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  ParseResult run() {
    std::vector<std::string> lines = split_lines();
    bool saw_case_line = false;
    for (size_t k = 0; k < lines.size(); ++k) {
      int line_no = static_cast<int>(k) + 1;
      const std::string& raw = lines[k];
      size_t first = raw.find_first_not_of(" \t");
      if (first == std::string::npos || raw[first] == '#') continue;

      LineScan scan = scan_line(raw, line_no);
      if (scan.error) {
        errors_.push_back(*scan.error);
        continue;
      }
      const auto& toks = scan.tokens;
      const Token& head = toks[0];
      if (head.quoted) {
        error(line_no, head.column, ErrorKind::Syntax,
              "line must start with case, node or edge");
        continue;
      }
      if (head.text == "case") {
        if (saw_case_line) {
          error(line_no, head.column, ErrorKind::Syntax, "duplicate case line");
          continue;
        }
        saw_case_line = true;
        parse_case(toks, line_no);
      } else if (head.text == "node") {
        if (!saw_case_line) missing_case_line(line_no, head.column);
        saw_case_line = true;  // report only once
        parse_node(toks, line_no);
      } else if (head.text == "edge") {
        if (!saw_case_line) missing_case_line(line_no, head.column);
        saw_case_line = true;
        parse_edge(toks, line_no);
      } else {
        error(line_no, head.column, ErrorKind::Syntax,
              "unknown keyword `" + head.text + "`");
      }
    }
    if (!saw_case_line)
      error(1, 1, ErrorKind::Syntax, "file must start with a case line");

    ParseResult result;
    result.errors = std::move(errors_);
    if (!result.errors.empty()) return result;

    BuildResult built = build_case(std::move(name_), std::move(nodes_),
                                   std::move(edges_));
    if (!built.ok()) {
      result.build_findings = std::move(built.findings);
      return result;
    }
    result.assurance_case = std::move(built.assurance_case);
    return result;
  }

 private:
  std::vector<std::string> split_lines() const {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text_) {
      if (c == '\n') {
        if (!cur.empty() && cur.back() == '\r') cur.pop_back();
        lines.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    if (!cur.empty()) {
      if (cur.back() == '\r') cur.pop_back();
      lines.push_back(cur);
    }
    return lines;
  }

  void error(int line, int col, ErrorKind kind, std::string message) {
    errors_.push_back({{line, col}, kind, std::move(message)});
  }

  void missing_case_line(int line, int col) {
    error(line, col, ErrorKind::Syntax, "the case line must come first");
  }

  void parse_case(const std::vector<Token>& toks, int line_no) {
    if (toks.size() != 2 || !toks[1].quoted) {
      error(line_no, toks[0].column, ErrorKind::Syntax,
            "expected: case \"<name>\"");
      return;
    }
    name_ = toks[1].text;
  }

  void parse_node(const std::vector<Token>& toks, int line_no) {
    if (toks.size() < 4) {
      error(line_no, toks[0].column, ErrorKind::Syntax,
            "expected: node <id> <kind> [attrs] \"<text>\"");
      return;
    }
    Node node;
    const Token& id = toks[1];
    if (id.quoted || !is_ident(id.text)) {
      error(line_no, id.column, ErrorKind::Syntax,
            "node id must match [A-Za-z][A-Za-z0-9_.-]*");
      return;
    }
    node.id = id.text;

    const Token& kind = toks[2];
    auto nk = kind.quoted ? std::nullopt : node_kind_from(kind.text);
    if (!nk) {
      error(line_no, kind.column, ErrorKind::Syntax,
            "unknown node kind `" + kind.text + "`");
      return;
    }
    node.kind = *nk;

    const Token& last = toks.back();
    if (!last.quoted) {
      error(line_no, last.column, ErrorKind::Syntax,
            "node line must end with a quoted statement");
      return;
    }
    if (last.text.empty()) {
      error(line_no, last.column, ErrorKind::Semantic,
            "node text must be non-empty");
      return;
    }
    node.text = last.text;

    bool bad = false;
    std::set<std::string> seen_keys;
    for (size_t i = 3; i + 1 < toks.size(); ++i) {
      const Token& attr = toks[i];
      if (attr.quoted) {
        error(line_no, attr.column, ErrorKind::Syntax,
              "attributes must precede the statement text");
        bad = true;
        break;
      }
      size_t eq = attr.text.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 > attr.text.size()) {
        error(line_no, attr.column, ErrorKind::Syntax,
              "expected key=value, got `" + attr.text + "`");
        bad = true;
        break;
      }
      std::string key = attr.text.substr(0, eq);
      std::string value = attr.text.substr(eq + 1);
      if (!seen_keys.insert(key).second) {
        error(line_no, attr.column, ErrorKind::Semantic,
              "duplicate attribute `" + key + "`");
        bad = true;
        continue;
      }
      if (!check_attr(node, key, value, line_no, attr.column)) bad = true;
    }
    if (!bad) nodes_.push_back(std::move(node));
  }

  bool check_attr(Node& node, const std::string& key, const std::string& value,
                  int line_no, int col) {
    if (key == "block") {
      auto b = block_from(value);
      if (!b) {
        error(line_no, col, ErrorKind::Semantic, "unknown block `" + value + "`");
        return false;
      }
      node.block = *b;
      return true;
    }
    if (key == "cia") {
      if (value.size() != 1 || !security_property_token(value[0])) {
        error(line_no, col, ErrorKind::Semantic,
              "cia must be one of C, I, A; got `" + value + "`");
        return false;
      }
    } else if (key == "risk") {
      if (value != "accept" && value != "mitigate" && value != "transfer") {
        error(line_no, col, ErrorKind::Semantic,
              "risk must be accept, mitigate or transfer; got `" + value + "`");
        return false;
      }
    } else if (key == "undeveloped") {
      if (value != "true") {
        error(line_no, col, ErrorKind::Semantic,
              "undeveloped only takes the value true");
        return false;
      }
    } else if (key == "covers") {
      if (!valid_covers(value)) {
        error(line_no, col, ErrorKind::Semantic,
              "covers must be a comma-separated list of clause ids");
        return false;
      }
    } else if (key == "asset" || key == "about" || key == "item") {
      if (!is_ident(value)) {
        error(line_no, col, ErrorKind::Semantic,
              key + " must reference an id token; got `" + value + "`");
        return false;
      }
    } else {
      error(line_no, col, ErrorKind::Semantic, "unknown attribute `" + key + "`");
      return false;
    }
    node.attrs[key] = value;
    return true;
  }

  static bool security_property_token(char c) {
    return c == 'C' || c == 'I' || c == 'A';
  }

  static bool valid_covers(const std::string& value) {
    if (value.empty()) return false;
    size_t start = 0;
    while (start <= value.size()) {
      size_t comma = value.find(',', start);
      std::string part = comma == std::string::npos
                             ? value.substr(start)
                             : value.substr(start, comma - start);
      if (!is_ident(part)) return false;
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return true;
  }

  void parse_edge(const std::vector<Token>& toks, int line_no) {
    if (toks.size() != 5 || toks[1].quoted || toks[2].quoted || toks[3].quoted ||
        toks[4].quoted || toks[2].text != "->") {
      error(line_no, toks[0].column, ErrorKind::Syntax,
            "expected: edge <id> -> <id> <rel>");
      return;
    }
    if (!is_ident(toks[1].text)) {
      error(line_no, toks[1].column, ErrorKind::Syntax, "bad source id");
      return;
    }
    if (!is_ident(toks[3].text)) {
      error(line_no, toks[3].column, ErrorKind::Syntax, "bad target id");
      return;
    }
    auto rel = edge_kind_from(toks[4].text);
    if (!rel) {
      error(line_no, toks[4].column, ErrorKind::Syntax,
            "unknown relation `" + toks[4].text + "`");
      return;
    }
    if (toks[1].text == toks[3].text) {
      error(line_no, toks[3].column, ErrorKind::Semantic,
            "edge source and target must differ");
      return;
    }
    edges_.push_back({toks[1].text, toks[3].text, *rel});
  }

  const std::string& text_;
  std::string name_;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<ParseError> errors_;
};

}  // namespace

ParseResult parse(const std::string& text) { return Parser(text).run(); }

std::string escape_qstring(const std::string& raw) {
  std::string out;
  out.reserve(raw.size() + 2);
  for (char c : raw) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string serialize(const AssuranceCase& c) {
  std::string out = "case \"" + escape_qstring(c.name()) + "\"\n";

  std::vector<const Node*> nodes;
  for (const Node& n : c.nodes()) nodes.push_back(&n);
  std::sort(nodes.begin(), nodes.end(),
            [](const Node* a, const Node* b) { return a->id < b->id; });
  for (const Node* n : nodes) {
    out += "node " + n->id + " " + to_string(n->kind);
    if (n->block) out += " block=" + std::string(to_string(*n->block));
    for (const auto& [key, value] : n->attrs) out += " " + key + "=" + value;
    out += " \"" + escape_qstring(n->text) + "\"\n";
  }

  std::vector<const Edge*> edges;
  for (const Edge& e : c.edges()) edges.push_back(&e);
  // rel compares as its token, so in_context_of sorts before supported_by.
  std::sort(edges.begin(), edges.end(), [](const Edge* a, const Edge* b) {
    int c2 = a->source.compare(b->source);
    if (c2 != 0) return c2 < 0;
    c2 = a->target.compare(b->target);
    if (c2 != 0) return c2 < 0;
    return std::strcmp(to_string(a->kind), to_string(b->kind)) < 0;
  });
  for (const Edge* e : edges)
    out += "edge " + e->source + " -> " + e->target + " " + to_string(e->kind) + "\n";

  return out;
}

}  // namespace casefile
}  // namespace sac
