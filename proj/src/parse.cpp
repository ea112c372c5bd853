#include "folp/parse.hpp"

#include <cctype>
#include <sstream>

namespace folp {

void PredTable::note(const std::string& pred, size_t n) {
  auto [it, fresh] = arity.emplace(pred, n);
  if (!fresh && it->second != n) {
    std::ostringstream os;
    os << "predicate " << pred << " used with arity " << n << " but previously with arity "
       << it->second;
    throw Error(Error::Kind::Arity, os.str());
  }
}

namespace {

enum class Tok {
  End,
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Tilde,
  Amp,
  Pipe,
  Arrow,
  Iff,
  Dot,
  Comma,
  Bang,
  Plus,
  KwForall,
  KwExists,
  KwBox,
  KwGen,
  JVar,
  JConst,
  Pred,
  IndVar,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::End: return "end of input";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Tilde: return "'~'";
    case Tok::Amp: return "'&'";
    case Tok::Pipe: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::Iff: return "'<->'";
    case Tok::Dot: return "'.'";
    case Tok::Comma: return "','";
    case Tok::Bang: return "'!'";
    case Tok::Plus: return "'+'";
    case Tok::KwForall: return "'forall'";
    case Tok::KwExists: return "'exists'";
    case Tok::KwBox: return "'box'";
    case Tok::KwGen: return "'gen'";
    case Tok::JVar: return "justification variable";
    case Tok::JConst: return "justification constant";
    case Tok::Pred: return "predicate symbol";
    case Tok::IndVar: return "individual variable";
  }
  return "?";
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(Error::Kind k, const std::string& msg) const {
    std::ostringstream os;
    os << tok_.line << ":" << tok_.col << ": " << msg;
    throw Error(k, os.str());
  }

 private:
  void advance() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])))
      bump();
    tok_.line = line_;
    tok_.col = col_;
    tok_.text.clear();
    if (pos_ >= src_.size()) {
      tok_.kind = Tok::End;
      return;
    }
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             std::isalnum(static_cast<unsigned char>(src_[pos_])))
        bump();
      tok_.text = std::string(src_.substr(start, pos_ - start));
      tok_.kind = classify(tok_.text);
      return;
    }
    switch (c) {
      case '(': bump(); tok_.kind = Tok::LParen; return;
      case ')': bump(); tok_.kind = Tok::RParen; return;
      case '{': bump(); tok_.kind = Tok::LBrace; return;
      case '}': bump(); tok_.kind = Tok::RBrace; return;
      case '[': bump(); tok_.kind = Tok::LBracket; return;
      case ']': bump(); tok_.kind = Tok::RBracket; return;
      case '~': bump(); tok_.kind = Tok::Tilde; return;
      case '&': bump(); tok_.kind = Tok::Amp; return;
      case '|': bump(); tok_.kind = Tok::Pipe; return;
      case '.': bump(); tok_.kind = Tok::Dot; return;
      case ',': bump(); tok_.kind = Tok::Comma; return;
      case '!': bump(); tok_.kind = Tok::Bang; return;
      case '+': bump(); tok_.kind = Tok::Plus; return;
      case '-':
        bump();
        if (pos_ < src_.size() && src_[pos_] == '>') {
          bump();
          tok_.kind = Tok::Arrow;
          return;
        }
        lex_fail("expected '->' after '-'");
      case '<':
        bump();
        if (pos_ + 1 < src_.size() && src_[pos_] == '-' && src_[pos_ + 1] == '>') {
          bump();
          bump();
          tok_.kind = Tok::Iff;
          return;
        }
        lex_fail("expected '<->' after '<'");
      default:
        lex_fail(std::string("stray character '") + c + "'");
    }
  }

  Tok classify(const std::string& id) const {
    if (id == "forall") return Tok::KwForall;
    if (id == "exists") return Tok::KwExists;
    if (id == "box") return Tok::KwBox;
    if (id == "gen") return Tok::KwGen;
    std::string_view rest(id);
    rest.remove_prefix(1);
    if (id[0] == 'p' && all_digits(rest)) return Tok::JVar;
    if (id[0] == 'c' && all_digits(rest)) return Tok::JConst;
    if (id[0] == 'P' && all_digits(rest)) return Tok::Pred;
    if (std::isupper(static_cast<unsigned char>(id[0])))
      lex_fail("identifier '" + id + "' starts uppercase; predicate symbols are P<digits>");
    return Tok::IndVar;
  }

  [[noreturn]] void lex_fail(const std::string& msg) const {
    std::ostringstream os;
    os << tok_.line << ":" << tok_.col << ": " << msg;
    throw Error(Error::Kind::Lexical, os.str());
  }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
};

class Parser {
 public:
  Parser(std::string_view src, PredTable* preds) : lex_(src), preds_(preds) {}

  Term term_all() {
    Term t = term();
    expect(Tok::End);
    return t;
  }

  Formula formula_all() {
    Formula f = formula();
    expect(Tok::End);
    return f;
  }

 private:
  Token expect(Tok k) {
    if (lex_.peek().kind != k)
      lex_.fail(Error::Kind::Syntax, std::string("expected ") + tok_name(k) + ", found " +
                                         tok_name(lex_.peek().kind));
    return lex_.take();
  }

  Var ind_var() {
    if (lex_.peek().kind != Tok::IndVar)
      lex_.fail(Error::Kind::Syntax, std::string("expected individual variable, found ") +
                                         tok_name(lex_.peek().kind));
    return lex_.take().text;
  }

  std::vector<Var> var_list(Tok closer) {
    std::vector<Var> vs;
    if (lex_.peek().kind == closer) return vs;
    vs.push_back(ind_var());
    while (lex_.peek().kind == Tok::Comma) {
      lex_.take();
      vs.push_back(ind_var());
    }
    return vs;
  }

  VarSet var_set(Tok closer) {
    VarSet s;
    for (auto& v : var_list(closer)) s.insert(v);
    return s;
  }

  Term term() {
    switch (lex_.peek().kind) {
      case Tok::JVar:
        return Term::jvar(lex_.take().text);
      case Tok::JConst:
        return Term::jconst(lex_.take().text);
      case Tok::Bang:
        lex_.take();
        return Term::bang(term());
      case Tok::KwGen: {
        lex_.take();
        expect(Tok::LBrace);
        Var x = ind_var();
        expect(Tok::RBrace);
        expect(Tok::LParen);
        Term inner = term();
        expect(Tok::RParen);
        return Term::gen(std::move(x), std::move(inner));
      }
      case Tok::LParen: {
        lex_.take();
        Term l = term();
        Tok op = lex_.peek().kind;
        if (op != Tok::Dot && op != Tok::Plus)
          lex_.fail(Error::Kind::Syntax, std::string("expected '.' or '+' in compound term, found ") +
                                             tok_name(op));
        lex_.take();
        Term r = term();
        expect(Tok::RParen);
        return op == Tok::Dot ? Term::app(std::move(l), std::move(r))
                              : Term::sum(std::move(l), std::move(r));
      }
      default:
        lex_.fail(Error::Kind::Syntax,
                  std::string("expected term, found ") + tok_name(lex_.peek().kind));
    }
  }

  Formula formula() {
    switch (lex_.peek().kind) {
      case Tok::Pred: {
        std::string p = lex_.take().text;
        expect(Tok::LParen);
        std::vector<Var> args = var_list(Tok::RParen);
        expect(Tok::RParen);
        if (preds_) preds_->note(p, args.size());
        return Formula::atom(std::move(p), std::move(args));
      }
      case Tok::Tilde:
        lex_.take();
        return Formula::lnot(formula());
      case Tok::KwForall: {
        lex_.take();
        Var x = ind_var();
        expect(Tok::Dot);
        return Formula::forall(std::move(x), formula());
      }
      case Tok::KwExists: {
        lex_.take();
        Var x = ind_var();
        expect(Tok::Dot);
        return Formula::exists(std::move(x), formula());
      }
      case Tok::KwBox: {
        lex_.take();
        expect(Tok::LBrace);
        VarSet X = var_set(Tok::RBrace);
        expect(Tok::RBrace);
        return Formula::box(std::move(X), formula());
      }
      case Tok::LBracket: {
        lex_.take();
        Term t = term();
        expect(Tok::RBracket);
        expect(Tok::LBrace);
        VarSet X = var_set(Tok::RBrace);
        expect(Tok::RBrace);
        return Formula::just(std::move(t), std::move(X), formula());
      }
      case Tok::LParen: {
        lex_.take();
        Formula a = formula();
        Tok op = lex_.peek().kind;
        if (op != Tok::Amp && op != Tok::Pipe && op != Tok::Arrow && op != Tok::Iff)
          lex_.fail(Error::Kind::Syntax,
                    std::string("expected connective in compound formula, found ") + tok_name(op));
        lex_.take();
        Formula b = formula();
        expect(Tok::RParen);
        switch (op) {
          case Tok::Amp: return Formula::land(std::move(a), std::move(b));
          case Tok::Pipe: return Formula::lor(std::move(a), std::move(b));
          case Tok::Arrow: return Formula::imp(std::move(a), std::move(b));
          default: return Formula::iff(std::move(a), std::move(b));
        }
      }
      default:
        lex_.fail(Error::Kind::Syntax,
                  std::string("expected formula, found ") + tok_name(lex_.peek().kind));
    }
  }

  Lexer lex_;
  PredTable* preds_;
};

void print_term(std::ostringstream& os, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::JVar:
    case Term::Kind::JConst:
      os << t.name();
      return;
    case Term::Kind::App:
      os << "(";
      print_term(os, t.left());
      os << " . ";
      print_term(os, t.right());
      os << ")";
      return;
    case Term::Kind::Sum:
      os << "(";
      print_term(os, t.left());
      os << " + ";
      print_term(os, t.right());
      os << ")";
      return;
    case Term::Kind::Bang:
      os << "!";
      print_term(os, t.inner());
      return;
    case Term::Kind::Gen:
      os << "gen{" << t.gen_index() << "}(";
      print_term(os, t.inner());
      os << ")";
      return;
  }
}

template <typename It>
void print_list(std::ostringstream& os, It first, It last) {
  for (It it = first; it != last; ++it) {
    if (it != first) os << ", ";
    os << *it;
  }
}

void print_formula(std::ostringstream& os, const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      os << f.pred() << "(";
      print_list(os, f.args().begin(), f.args().end());
      os << ")";
      return;
    case Formula::Kind::Not:
      os << "~";
      print_formula(os, f.child());
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp:
    case Formula::Kind::Iff: {
      const char* op = f.kind() == Formula::Kind::And   ? " & "
                       : f.kind() == Formula::Kind::Or  ? " | "
                       : f.kind() == Formula::Kind::Imp ? " -> "
                                                        : " <-> ";
      os << "(";
      print_formula(os, f.lhs());
      os << op;
      print_formula(os, f.rhs());
      os << ")";
      return;
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      os << (f.kind() == Formula::Kind::Forall ? "forall " : "exists ") << f.bound_var() << ". ";
      print_formula(os, f.child());
      return;
    case Formula::Kind::Box:
      os << "box{";
      print_list(os, f.index().begin(), f.index().end());
      os << "} ";
      print_formula(os, f.child());
      return;
    case Formula::Kind::Just:
      os << "[";
      print_term(os, f.term());
      os << "]{";
      print_list(os, f.index().begin(), f.index().end());
      os << "} ";
      print_formula(os, f.child());
      return;
  }
}

}  // namespace

Term parse_term(std::string_view src) { return Parser(src, nullptr).term_all(); }

Formula parse_formula(std::string_view src, PredTable* preds) {
  PredTable local;  // arity consistency is enforced within a parse regardless
  return Parser(src, preds ? preds : &local).formula_all();
}

std::string print(const Term& t) {
  std::ostringstream os;
  print_term(os, t);
  return os.str();
}

std::string print(const Formula& f) {
  std::ostringstream os;
  print_formula(os, f);
  return os.str();
}

}  // namespace folp
