#include "fnv/parse.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace fnv {
namespace {

enum class Tok {
  Ident,
  Keyword,
  LBrace,
  RBrace,
  Semi,
  Comma,
  Colon,
  Dot,
  Arrow,       // ->
  StereoOpen,  // -[
  StereoClose, // ]->
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceLocation loc;
};

const std::set<std::string>& keywords() {
  static const std::set<std::string> kws = {
      "funcnet", "in", "out", "def", "block", "inst", "connect",
      "view", "of", "env", "ext", "features", "feature",
      "mandatory", "optional", "alternative", "or", "binding"};
  return kws;
}

class Lexer {
 public:
  Lexer(std::string_view text, std::vector<Diagnostic>& diags)
      : text_(text), diags_(diags) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_trivia();
      SourceLocation loc{line_, col_};
      if (eof()) {
        out.push_back({Tok::End, "", loc});
        break;
      }
      char c = peek();
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string id;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
          id += take();
        out.push_back({keywords().count(id) ? Tok::Keyword : Tok::Ident, id, loc});
        continue;
      }
      switch (c) {
        case '{': take(); out.push_back({Tok::LBrace, "{", loc}); continue;
        case '}': take(); out.push_back({Tok::RBrace, "}", loc}); continue;
        case ';': take(); out.push_back({Tok::Semi, ";", loc}); continue;
        case ',': take(); out.push_back({Tok::Comma, ",", loc}); continue;
        case ':': take(); out.push_back({Tok::Colon, ":", loc}); continue;
        case '.': take(); out.push_back({Tok::Dot, ".", loc}); continue;
        case '-':
          take();
          if (!eof() && peek() == '>') { take(); out.push_back({Tok::Arrow, "->", loc}); continue; }
          if (!eof() && peek() == '[') { take(); out.push_back({Tok::StereoOpen, "-[", loc}); continue; }
          error(loc, std::string("unexpected character '-'"));
          continue;
        case ']':
          take();
          if (!eof() && peek() == '-') {
            take();
            if (!eof() && peek() == '>') { take(); out.push_back({Tok::StereoClose, "]->", loc}); continue; }
          }
          error(loc, "expected ']->'");
          continue;
        default:
          error(loc, std::string("unexpected character '") + c + "'");
          take();
          continue;
      }
    }
    return out;
  }

 private:
  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  char take() {
    char c = text_[pos_++];
    if (c == '\n') { ++line_; col_ = 1; } else { ++col_; }
    return c;
  }

  void skip_trivia() {
    while (!eof()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) { take(); continue; }
      if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (!eof() && peek() != '\n') take();
        continue;
      }
      if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '*') {
        SourceLocation loc{line_, col_};
        take(); take();
        bool closed = false;
        while (!eof()) {
          char d = take();
          if (d == '*' && !eof() && peek() == '/') { take(); closed = true; break; }
        }
        if (!closed) error(loc, "unterminated block comment");
        continue;
      }
      break;
    }
  }

  void error(SourceLocation loc, const std::string& msg) {
    diags_.push_back({"P0", Severity::Error,
                      std::to_string(loc.line) + ":" + std::to_string(loc.column),
                      msg, loc});
  }

  std::string_view text_;
  std::vector<Diagnostic>& diags_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

constexpr std::size_t kMaxDiagnostics = 50;

class Parser {
 public:
  Parser(std::vector<Token> toks, std::vector<Diagnostic>& diags)
      : toks_(std::move(toks)), diags_(diags) {}

  Model run() {
    Model m;
    while (!at(Tok::End)) {
      if (diags_.size() >= kMaxDiagnostics) break;
      if (at_keyword("funcnet")) { parse_funcnet(m); continue; }
      if (at_keyword("view")) { parse_view(m); continue; }
      if (at_keyword("features")) { parse_features(m); continue; }
      if (at_keyword("binding")) { parse_binding(m); continue; }
      error(cur(), "expected 'funcnet', 'view', 'features' or 'binding'");
      recover_top_level();
    }
    resolve_references(m);
    return m;
  }

 private:
  // --- token helpers -------------------------------------------------

  const Token& cur() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool at(Tok k) const { return cur().kind == k; }
  bool at_keyword(const char* kw) const {
    return cur().kind == Tok::Keyword && cur().text == kw;
  }

  bool accept(Tok k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }

  void error(const Token& t, const std::string& msg) {
    std::string shown = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    diags_.push_back({"P0", Severity::Error,
                      std::to_string(t.loc.line) + ":" + std::to_string(t.loc.column),
                      msg + ", found " + shown, t.loc});
  }

  bool expect(Tok k, const char* what) {
    if (accept(k)) return true;
    error(cur(), std::string("expected ") + what);
    return false;
  }

  bool expect_keyword(const char* kw) {
    if (at_keyword(kw)) { ++pos_; return true; }
    error(cur(), std::string("expected '") + kw + "'");
    return false;
  }

  std::optional<Token> expect_ident(const char* what) {
    if (at(Tok::Ident)) return next();
    if (at(Tok::Keyword))
      error(cur(), std::string("expected ") + what + " (keyword may not be used as identifier)");
    else
      error(cur(), std::string("expected ") + what);
    return std::nullopt;
  }

  // Skips to the end of the current declaration: past the next ';' at this
  // nesting depth, or up to (not past) the enclosing '}'.
  void recover_item() {
    int depth = 0;
    while (!at(Tok::End)) {
      if (at(Tok::LBrace)) { ++depth; ++pos_; continue; }
      if (at(Tok::RBrace)) {
        if (depth == 0) return;
        --depth; ++pos_; continue;
      }
      if (at(Tok::Semi) && depth == 0) { ++pos_; return; }
      ++pos_;
    }
  }

  void recover_top_level() {
    int depth = 0;
    while (!at(Tok::End)) {
      if (at(Tok::LBrace)) { ++depth; ++pos_; continue; }
      if (at(Tok::RBrace)) { if (depth > 0) --depth; ++pos_; continue; }
      if (depth == 0 &&
          (at_keyword("funcnet") || at_keyword("view") || at_keyword("features") ||
           at_keyword("binding")))
        return;
      ++pos_;
    }
  }

  // --- shared pieces --------------------------------------------------

  std::optional<Path> parse_path(const char* what) {
    auto first = expect_ident(what);
    if (!first) return std::nullopt;
    Path p;
    p.loc = first->loc;
    p.segments.push_back(first->text);
    while (accept(Tok::Dot)) {
      auto seg = expect_ident("path segment");
      if (!seg) return std::nullopt;
      p.segments.push_back(seg->text);
    }
    return p;
  }

  std::optional<ConnectorDecl> parse_connect() {
    SourceLocation loc = cur().loc;
    ++pos_;  // 'connect'
    ConnectorDecl c;
    c.loc = loc;
    auto src = parse_path("connector source");
    if (!src) return std::nullopt;
    c.source = *src;
    if (accept(Tok::Arrow)) {
      // plain digital arrow
    } else if (accept(Tok::StereoOpen)) {
      const Token& st = cur();
      std::optional<Stereotype> stereo;
      if ((st.kind == Tok::Ident || st.kind == Tok::Keyword) && st.text.size() == 1)
        stereo = stereotype_from_letter(st.text[0]);
      if (!stereo) {
        error(st, "expected stereotype 'M', 'E' or 'H'");
        return std::nullopt;
      }
      ++pos_;
      c.stereotype = stereo;
      if (!expect(Tok::StereoClose, "']->'")) return std::nullopt;
    } else {
      error(cur(), "expected '->' or '-[M|E|H]->'");
      return std::nullopt;
    }
    do {
      auto tgt = parse_path("connector target");
      if (!tgt) return std::nullopt;
      c.targets.push_back(*tgt);
    } while (accept(Tok::Comma));
    if (accept(Tok::Colon)) {
      auto sig = expect_ident("signal name");
      if (!sig) return std::nullopt;
      c.signal = sig->text;
    }
    if (!expect(Tok::Semi, "';'")) return std::nullopt;
    return c;
  }

  void parse_ports(BlockTemplate& body, bool is_in) {
    ++pos_;  // 'in' / 'out'
    auto& ports = is_in ? body.in_ports : body.out_ports;
    do {
      auto id = expect_ident("port signal name");
      if (!id) { recover_item(); return; }
      if (std::find(ports.begin(), ports.end(), id->text) == ports.end())
        ports.push_back(id->text);
    } while (accept(Tok::Comma));
    expect(Tok::Semi, "';'");
  }

  // --- funcnet ----------------------------------------------------------

  void parse_funcnet(Model& m) {
    SourceLocation loc = cur().loc;
    ++pos_;
    auto name = expect_ident("funcnet name");
    if (!name) { recover_top_level(); return; }
    FunctionNetDef net;
    net.name = name->text;
    net.loc = loc;
    net.body.name = name->text;
    net.body.loc = loc;
    if (!expect(Tok::LBrace, "'{'")) { recover_top_level(); return; }
    parse_net_body(net, net.body);
    expect(Tok::RBrace, "'}'");
    m.funcnets.push_back(std::move(net));
  }

  void parse_net_body(FunctionNetDef& net, BlockTemplate& body) {
    std::set<std::string> sibling_names;
    while (!at(Tok::RBrace) && !at(Tok::End)) {
      if (diags_.size() >= kMaxDiagnostics) return;
      if (at_keyword("in") || at_keyword("out")) {
        parse_ports(body, at_keyword("in"));
      } else if (at_keyword("def")) {
        ++pos_;
        auto tname = expect_ident("template name");
        if (!tname) { recover_item(); continue; }
        BlockTemplate tmpl;
        tmpl.name = tname->text;
        tmpl.loc = tname->loc;
        if (!expect(Tok::LBrace, "'{'")) { recover_item(); continue; }
        parse_net_body(net, tmpl);
        expect(Tok::RBrace, "'}'");
        if (net.find_template(tmpl.name))
          error_at(tmpl.loc, "duplicate template name '" + tmpl.name + "'");
        else
          net.templates.push_back(std::move(tmpl));
      } else if (at_keyword("block")) {
        ++pos_;
        auto bname = expect_ident("block name");
        if (!bname) { recover_item(); continue; }
        auto block = std::make_shared<BlockTemplate>();
        block->name = bname->text;
        block->loc = bname->loc;
        if (accept(Tok::LBrace)) {
          parse_net_body(net, *block);
          expect(Tok::RBrace, "'}'");
        } else {
          expect(Tok::Semi, "';' or '{'");
        }
        if (!sibling_names.insert(block->name).second) {
          error_at(block->loc, "duplicate sibling name '" + block->name + "'");
          continue;
        }
        NetChild child;
        child.kind = NetChild::Kind::Owned;
        child.block = std::move(block);
        child.loc = bname->loc;
        body.children.push_back(std::move(child));
      } else if (at_keyword("inst")) {
        ++pos_;
        auto tref = expect_ident("template name");
        if (!tref) { recover_item(); continue; }
        auto iname = expect_ident("instance name");
        if (!iname) { recover_item(); continue; }
        expect(Tok::Semi, "';'");
        if (!sibling_names.insert(iname->text).second) {
          error_at(iname->loc, "duplicate sibling name '" + iname->text + "'");
          continue;
        }
        NetChild child;
        child.kind = NetChild::Kind::Instance;
        child.template_ref = tref->text;
        child.instance_name = iname->text;
        child.loc = iname->loc;
        body.children.push_back(std::move(child));
      } else if (at_keyword("connect")) {
        auto c = parse_connect();
        if (c) body.connectors.push_back(std::move(*c));
        else recover_item();
      } else {
        error(cur(), "expected 'in', 'out', 'def', 'block', 'inst' or 'connect'");
        recover_item();
      }
    }
  }

  // --- view ---------------------------------------------------------------

  void parse_view(Model& m) {
    SourceLocation loc = cur().loc;
    ++pos_;
    auto name = expect_ident("view name");
    if (!name) { recover_top_level(); return; }
    ViewDef v;
    v.name = name->text;
    v.loc = loc;
    if (!expect_keyword("of")) { recover_top_level(); return; }
    if (at_keyword("view")) { ++pos_; v.base_is_view = true; }
    auto base = expect_ident("base name");
    if (!base) { recover_top_level(); return; }
    v.base_name = base->text;
    if (!expect(Tok::LBrace, "'{'")) { recover_top_level(); return; }
    parse_view_body(v.elements, v.env_blocks, v.connectors);
    expect(Tok::RBrace, "'}'");
    m.views.push_back(std::move(v));
  }

  void parse_view_body(std::vector<ViewElement>& elements,
                       std::vector<std::string>& env_names,
                       std::vector<ConnectorDecl>& connectors) {
    std::set<std::string> sibling_names;
    while (!at(Tok::RBrace) && !at(Tok::End)) {
      if (diags_.size() >= kMaxDiagnostics) return;
      if (at_keyword("block") || at_keyword("ext")) {
        bool is_ext = at_keyword("ext");
        ++pos_;
        auto path = parse_path(is_ext ? "ext block path" : "block path");
        if (!path) { recover_item(); continue; }
        ViewElement el;
        el.kind = is_ext ? ViewElement::Kind::Ext : ViewElement::Kind::Shown;
        el.path = *path;
        el.loc = path->loc;
        if (is_ext) {
          expect(Tok::Semi, "';'");
        } else if (accept(Tok::LBrace)) {
          parse_view_body(el.children, el.env_children, el.connectors);
          expect(Tok::RBrace, "'}'");
        } else {
          expect(Tok::Semi, "';' or '{'");
        }
        if (!sibling_names.insert(el.path.str()).second) {
          error_at(el.loc, "duplicate sibling name '" + el.path.str() + "'");
          continue;
        }
        elements.push_back(std::move(el));
      } else if (at_keyword("env")) {
        ++pos_;
        auto id = expect_ident("environment block name");
        if (!id) { recover_item(); continue; }
        expect(Tok::Semi, "';'");
        if (!sibling_names.insert(id->text).second) {
          error_at(id->loc, "duplicate sibling name '" + id->text + "'");
          continue;
        }
        env_names.push_back(id->text);
      } else if (at_keyword("connect")) {
        auto c = parse_connect();
        if (c) connectors.push_back(std::move(*c));
        else recover_item();
      } else {
        error(cur(), "expected 'block', 'env', 'ext' or 'connect'");
        recover_item();
      }
    }
  }

  // --- features -------------------------------------------------------------

  void parse_features(Model& m) {
    SourceLocation loc = cur().loc;
    ++pos_;
    auto name = expect_ident("feature diagram name");
    if (!name) { recover_top_level(); return; }
    FeatureDiagram fd;
    fd.name = name->text;
    fd.loc = loc;
    if (!expect(Tok::LBrace, "'{'")) { recover_top_level(); return; }
    if (!expect_keyword("feature")) { recover_top_level(); return; }
    auto root = expect_ident("feature name");
    if (!root) { recover_top_level(); return; }
    fd.root.name = root->text;
    fd.root.loc = root->loc;
    if (accept(Tok::LBrace)) {
      parse_feature_body(fd.root);
      expect(Tok::RBrace, "'}'");
    }
    expect(Tok::RBrace, "'}'");
    m.feature_diagrams.push_back(std::move(fd));
  }

  // Parses `feature ID (body | ";")` and appends the node to `out`.
  bool parse_feature_decl(std::vector<FeatureNode>& out, bool allow_semi = true) {
    if (!expect_keyword("feature")) return false;
    auto name = expect_ident("feature name");
    if (!name) return false;
    FeatureNode node;
    node.name = name->text;
    node.loc = name->loc;
    if (accept(Tok::LBrace)) {
      parse_feature_body(node);
      expect(Tok::RBrace, "'}'");
    } else if (allow_semi) {
      if (!expect(Tok::Semi, "';' or '{'")) return false;
    }
    out.push_back(std::move(node));
    return true;
  }

  void parse_feature_body(FeatureNode& node) {
    while (!at(Tok::RBrace) && !at(Tok::End)) {
      if (diags_.size() >= kMaxDiagnostics) return;
      if (at_keyword("mandatory") || at_keyword("optional")) {
        FeatureItem item;
        item.kind = FeatureItem::Kind::ModChild;
        item.modality = at_keyword("mandatory") ? Modality::Mandatory : Modality::Optional;
        item.loc = cur().loc;
        ++pos_;
        if (!parse_feature_decl(item.members)) { recover_item(); continue; }
        node.items.push_back(std::move(item));
      } else if (at_keyword("alternative") || at_keyword("or")) {
        FeatureItem item;
        item.kind = FeatureItem::Kind::Group;
        item.group_kind = at_keyword("alternative") ? GroupKind::Alternative : GroupKind::Or;
        item.loc = cur().loc;
        ++pos_;
        if (!expect(Tok::LBrace, "'{'")) { recover_item(); continue; }
        while (at_keyword("feature")) {
          if (!parse_feature_decl(item.members)) { recover_item(); break; }
        }
        if (item.members.empty())
          error(cur(), "expected at least one 'feature' in group");
        expect(Tok::RBrace, "'}'");
        node.items.push_back(std::move(item));
      } else {
        error(cur(), "expected 'mandatory', 'optional', 'alternative' or 'or'");
        recover_item();
      }
    }
  }

  // --- binding -----------------------------------------------------------

  void parse_binding(Model& m) {
    SourceLocation loc = cur().loc;
    ++pos_;
    auto diagram = expect_ident("feature diagram name");
    if (!diagram) { recover_top_level(); return; }
    Binding b;
    b.name = diagram->text;
    b.diagram = diagram->text;
    b.loc = loc;
    if (!expect(Tok::Arrow, "'->'")) { recover_top_level(); return; }
    auto net = expect_ident("funcnet name");
    if (!net) { recover_top_level(); return; }
    b.net = net->text;
    if (!expect(Tok::LBrace, "'{'")) { recover_top_level(); return; }
    while (!at(Tok::RBrace) && !at(Tok::End)) {
      if (diags_.size() >= kMaxDiagnostics) return;
      auto feature = expect_ident("feature name");
      if (!feature) { recover_item(); continue; }
      if (!expect(Tok::Colon, "':'")) { recover_item(); continue; }
      if (!expect_keyword("view")) { recover_item(); continue; }
      auto view = expect_ident("view name");
      if (!view) { recover_item(); continue; }
      expect(Tok::Semi, "';'");
      b.entries.push_back({feature->text, view->text, feature->loc});
    }
    expect(Tok::RBrace, "'}'");
    m.bindings.push_back(std::move(b));
  }

  // --- cross-reference checks ------------------------------------------

  void error_at(SourceLocation loc, const std::string& msg) {
    diags_.push_back({"P0", Severity::Error,
                      std::to_string(loc.line) + ":" + std::to_string(loc.column),
                      msg, loc});
  }

  template <typename T>
  void check_unique(const std::vector<T>& items, const char* kind) {
    std::set<std::string> seen;
    for (const auto& it : items)
      if (!seen.insert(it.name).second)
        error_at(it.loc, std::string("duplicate ") + kind + " name '" + it.name + "'");
  }

  void resolve_references(const Model& m) {
    check_unique(m.funcnets, "funcnet");
    check_unique(m.views, "view");
    check_unique(m.feature_diagrams, "feature diagram");
    check_unique(m.bindings, "binding");
    for (const auto& v : m.views) {
      if (v.base_is_view) {
        if (!m.find_view(v.base_name))
          error_at(v.loc, "view '" + v.name + "' refers to unknown base view '" + v.base_name + "'");
      } else if (!m.find_funcnet(v.base_name)) {
        error_at(v.loc, "view '" + v.name + "' refers to unknown funcnet '" + v.base_name + "'");
      }
    }
    for (const auto& b : m.bindings) {
      const FeatureDiagram* fd = m.find_diagram(b.diagram);
      if (!fd)
        error_at(b.loc, "binding refers to unknown feature diagram '" + b.diagram + "'");
      if (!m.find_funcnet(b.net))
        error_at(b.loc, "binding refers to unknown funcnet '" + b.net + "'");
      std::set<std::string> bound;
      for (const auto& e : b.entries) {
        if (fd && !fd->find_feature(e.feature))
          error_at(e.loc, "binding entry refers to unknown feature '" + e.feature + "'");
        if (!bound.insert(e.feature).second)
          error_at(e.loc, "duplicate binding entry for feature '" + e.feature + "'");
        // Entry view names are deliberately not resolved here; a missing
        // view is a B1 finding of validate_binding.
      }
    }
  }

  std::vector<Token> toks_;
  std::vector<Diagnostic>& diags_;
  std::size_t pos_ = 0;
};

}  // namespace

ParseResult parse(std::string_view text) {
  ParseResult result;
  Lexer lexer(text, result.diagnostics);
  std::vector<Token> toks = lexer.run();
  if (!result.diagnostics.empty()) return result;  // lexing failed
  Parser parser(std::move(toks), result.diagnostics);
  Model m = parser.run();
  if (result.diagnostics.empty()) result.model = std::move(m);
  return result;
}

}  // namespace fnv
