#include "gpcq/surrogate.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <cstring>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "gpcq/error.hpp"
#include "gpcq/random.hpp"

namespace gpcq {

// ---------------------------------------------------------------------------
// Distribution

Distribution Distribution::gaussian(double mean, double stddev) {
  if (!std::isfinite(mean) || !std::isfinite(stddev) || !(stddev > 0.0))
    throw InvalidInput("gaussian distribution requires finite mean and stddev > 0");
  return {Kind::Gaussian, mean, stddev};
}

Distribution Distribution::uniform(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
    throw InvalidInput("uniform distribution requires finite bounds with lo < hi");
  return {Kind::Uniform, lo, hi};
}

double Distribution::mean() const {
  return kind == Kind::Gaussian ? first : 0.5 * (first + second);
}

double Distribution::variance() const {
  if (kind == Kind::Gaussian) return second * second;
  const double w = second - first;
  return w * w / 12.0;
}

// ---------------------------------------------------------------------------
// Expression tree

namespace expr {

enum class Op { Number, Variable, Negate, Add, Subtract, Multiply, Divide, Power, Call };
enum class Function { Exp, Sin, Cos, Sqrt, Abs };

struct Node {
  Op op = Op::Number;
  double value = 0.0;
  std::size_t index = 0;
  std::string name;  // variable or function name
  Function function = Function::Exp;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

}  // namespace expr

namespace {

using expr::Function;
using expr::Node;
using expr::Op;
using NodePtr = std::shared_ptr<const Node>;

const std::map<std::string, Function, std::less<>> kFunctions = {
    {"exp", Function::Exp}, {"sin", Function::Sin},   {"cos", Function::Cos},
    {"sqrt", Function::Sqrt}, {"abs", Function::Abs},
};

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// ----- lexer

enum class Tok { Ident, Number, Symbol, Newline, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  double number = 0.0;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_blank();
      Token t;
      t.line = line_;
      t.column = col_;
      if (pos_ >= src_.size()) {
        t.kind = Tok::End;
        out.push_back(t);
        return out;
      }
      const char c = src_[pos_];
      if (c == '\n' || c == ';') {
        t.kind = Tok::Newline;
        t.text = std::string(1, c);
        advance();
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Tok::Ident;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
          t.text.push_back(src_[pos_]);
          advance();
        }
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        t.kind = Tok::Number;
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
          advance();
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
          std::size_t look = pos_ + 1;
          if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
          if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
            while (pos_ < look) advance();
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
              advance();
          }
        }
        t.text = std::string(src_.substr(start, pos_ - start));
        const char* first = t.text.data();
        const char* last = first + t.text.size();
        auto res = std::from_chars(first, last, t.number);
        if (res.ec != std::errc() || res.ptr != last)
          throw ParseError("malformed number '" + t.text + "'", t.line, t.column);
      } else if (std::string_view("~(),=+-*/^").find(c) != std::string_view::npos) {
        t.kind = Tok::Symbol;
        t.text = std::string(1, c);
        advance();
      } else {
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\r') {
        advance();
      } else if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

// ----- parser

struct PendingRef {
  std::shared_ptr<Node> node;
  std::size_t line;
  std::size_t column;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  void run(std::vector<Variable>& vars, NodePtr& root) {
    std::map<std::string, std::size_t, std::less<>> declared;
    std::optional<Token> output_stmt;
    while (peek().kind != Tok::End) {
      if (peek().kind == Tok::Newline) {
        ++pos_;
        continue;
      }
      const Token head = expect_ident("statement");
      if (is_symbol("~")) {
        ++pos_;
        if (declared.count(head.text))
          throw ParseError("duplicate declaration of '" + head.text + "'", head.line, head.column);
        if (kFunctions.count(head.text))
          throw ParseError("'" + head.text + "' is a reserved function name", head.line,
                           head.column);
        vars.push_back({head.text, parse_distribution()});
        declared.emplace(head.text, vars.size() - 1);
      } else if (is_symbol("=")) {
        if (head.text != "f")
          throw ParseError("expected output 'f', found '" + head.text + "'", head.line,
                           head.column);
        if (output_stmt)
          throw ParseError("duplicate definition of 'f'", head.line, head.column);
        output_stmt = head;
        ++pos_;
        root = parse_expr();
      } else {
        fail("'~' or '='");
      }
      end_statement();
    }
    if (!output_stmt) {
      const Token& t = peek();
      throw ParseError("missing 'f = <expression>' statement", t.line, t.column);
    }
    for (auto& ref : refs_) {
      auto it = declared.find(ref.node->name);
      if (it == declared.end())
        throw ParseError("undeclared variable '" + ref.node->name + "'", ref.line, ref.column);
      ref.node->index = it->second;
    }
  }

 private:
  const Token& peek() const { return toks_[pos_]; }

  bool is_symbol(std::string_view s) const {
    return peek().kind == Tok::Symbol && peek().text == s;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    if (t.kind == Tok::End) throw ParseError("unexpected end of input, expected " + expected, t.line, t.column);
    const std::string found = t.kind == Tok::Newline ? "end of statement" : "'" + t.text + "'";
    throw ParseError("expected " + expected + ", found " + found, t.line, t.column);
  }

  Token expect_ident(const std::string& what) {
    if (peek().kind != Tok::Ident) fail(what);
    return toks_[pos_++];
  }

  void expect_symbol(std::string_view s) {
    if (!is_symbol(s)) fail("'" + std::string(s) + "'");
    ++pos_;
  }

  void end_statement() {
    if (peek().kind == Tok::Newline) {
      ++pos_;
    } else if (peek().kind != Tok::End) {
      fail("end of statement");
    }
  }

  double parse_signed_number() {
    bool negative = false;
    while (is_symbol("-") || is_symbol("+")) {
      negative ^= peek().text == "-";
      ++pos_;
    }
    if (peek().kind != Tok::Number) fail("number");
    const double v = toks_[pos_++].number;
    return negative ? -v : v;
  }

  Distribution parse_distribution() {
    const Token kind = expect_ident("distribution 'N' or 'U'");
    expect_symbol("(");
    const double p1 = parse_signed_number();
    expect_symbol(",");
    const double p2 = parse_signed_number();
    expect_symbol(")");
    try {
      if (kind.text == "N") return Distribution::gaussian(p1, p2);
      if (kind.text == "U") return Distribution::uniform(p1, p2);
    } catch (const InvalidInput& e) {
      throw ParseError(e.what(), kind.line, kind.column);
    }
    throw ParseError("unknown distribution '" + kind.text + "' (expected N or U)", kind.line,
                     kind.column);
  }

  static NodePtr binary(Op op, NodePtr l, NodePtr r) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    while (is_symbol("+") || is_symbol("-")) {
      const Op op = peek().text == "+" ? Op::Add : Op::Subtract;
      ++pos_;
      lhs = binary(op, lhs, parse_term());
    }
    return lhs;
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    while (is_symbol("*") || is_symbol("/")) {
      const Op op = peek().text == "*" ? Op::Multiply : Op::Divide;
      ++pos_;
      lhs = binary(op, lhs, parse_unary());
    }
    return lhs;
  }

  NodePtr parse_unary() {
    if (is_symbol("-")) {
      ++pos_;
      auto n = std::make_shared<Node>();
      n->op = Op::Negate;
      n->lhs = parse_unary();
      return n;
    }
    if (is_symbol("+")) {
      ++pos_;
      return parse_unary();
    }
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (is_symbol("^")) {
      ++pos_;
      return binary(Op::Power, base, parse_unary());
    }
    return base;
  }

  NodePtr parse_primary() {
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      auto n = std::make_shared<Node>();
      n->op = Op::Number;
      n->value = t.number;
      ++pos_;
      return n;
    }
    if (t.kind == Tok::Ident) {
      const Token id = toks_[pos_++];
      if (is_symbol("(")) {
        auto fn = kFunctions.find(id.text);
        if (fn == kFunctions.end())
          throw ParseError("unknown function '" + id.text + "'", id.line, id.column);
        ++pos_;
        auto n = std::make_shared<Node>();
        n->op = Op::Call;
        n->name = id.text;
        n->function = fn->second;
        n->lhs = parse_expr();
        expect_symbol(")");
        return n;
      }
      auto n = std::make_shared<Node>();
      n->op = Op::Variable;
      n->name = id.text;
      refs_.push_back({n, id.line, id.column});
      return n;
    }
    if (is_symbol("(")) {
      ++pos_;
      NodePtr inner = parse_expr();
      expect_symbol(")");
      return inner;
    }
    fail("expression");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<PendingRef> refs_;
};

// ----- evaluation

double eval(const Node& n, std::span<const double> x) {
  switch (n.op) {
    case Op::Number:
      return n.value;
    case Op::Variable:
      return x[n.index];
    case Op::Negate:
      return -eval(*n.lhs, x);
    case Op::Add:
      return eval(*n.lhs, x) + eval(*n.rhs, x);
    case Op::Subtract:
      return eval(*n.lhs, x) - eval(*n.rhs, x);
    case Op::Multiply:
      return eval(*n.lhs, x) * eval(*n.rhs, x);
    case Op::Divide: {
      const double num = eval(*n.lhs, x);
      const double den = eval(*n.rhs, x);
      if (den == 0.0) throw NumericalError("division by zero in model evaluation");
      return num / den;
    }
    case Op::Power:
      return std::pow(eval(*n.lhs, x), eval(*n.rhs, x));
    case Op::Call: {
      const double a = eval(*n.lhs, x);
      switch (n.function) {
        case Function::Exp:
          return std::exp(a);
        case Function::Sin:
          return std::sin(a);
        case Function::Cos:
          return std::cos(a);
        case Function::Sqrt:
          if (a < 0.0) throw NumericalError("sqrt of negative argument in model evaluation");
          return std::sqrt(a);
        case Function::Abs:
          return std::abs(a);
      }
    }
  }
  return 0.0;
}

// ----- printing

int precedence(const Node& n) {
  switch (n.op) {
    case Op::Add:
    case Op::Subtract:
      return 1;
    case Op::Multiply:
    case Op::Divide:
      return 2;
    case Op::Negate:
      return 3;
    case Op::Power:
      return 4;
    case Op::Number:
      return n.value < 0.0 || std::signbit(n.value) ? 0 : 5;
    default:
      return 5;
  }
}

void print(const Node& n, const std::vector<Variable>& vars, std::ostream& os);

void print_wrapped(const Node& n, bool wrap, const std::vector<Variable>& vars, std::ostream& os) {
  if (wrap) os << '(';
  print(n, vars, os);
  if (wrap) os << ')';
}

void print(const Node& n, const std::vector<Variable>& vars, std::ostream& os) {
  const int p = precedence(n);
  switch (n.op) {
    case Op::Number:
      os << format_number(n.value);
      return;
    case Op::Variable:
      os << vars[n.index].name;
      return;
    case Op::Call:
      os << n.name << '(';
      print(*n.lhs, vars, os);
      os << ')';
      return;
    case Op::Negate:
      os << '-';
      print_wrapped(*n.lhs, precedence(*n.lhs) < 3, vars, os);
      return;
    case Op::Power:
      print_wrapped(*n.lhs, precedence(*n.lhs) <= 4, vars, os);
      os << '^';
      print_wrapped(*n.rhs, precedence(*n.rhs) < 3, vars, os);
      return;
    default: {
      const char* sym = n.op == Op::Add        ? " + "
                        : n.op == Op::Subtract ? " - "
                        : n.op == Op::Multiply ? " * "
                                               : " / ";
      print_wrapped(*n.lhs, precedence(*n.lhs) < p, vars, os);
      os << sym;
      print_wrapped(*n.rhs, precedence(*n.rhs) <= p, vars, os);
    }
  }
}

bool same_tree(const Node* a, const Node* b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->op != b->op) return false;
  switch (a->op) {
    case Op::Number:
      return std::memcmp(&a->value, &b->value, sizeof(double)) == 0;
    case Op::Variable:
      return a->index == b->index;
    case Op::Call:
      return a->function == b->function && same_tree(a->lhs.get(), b->lhs.get());
    default:
      return same_tree(a->lhs.get(), b->lhs.get()) && same_tree(a->rhs.get(), b->rhs.get());
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// SurrogateModel

SurrogateModel::SurrogateModel(std::vector<Variable> variables, NodePtr root)
    : variables_(std::move(variables)), root_(std::move(root)) {}

SurrogateModel SurrogateModel::parse(std::string_view source) {
  Parser parser(Lexer(source).run());
  std::vector<Variable> vars;
  NodePtr root;
  parser.run(vars, root);
  return SurrogateModel(std::move(vars), std::move(root));
}

double SurrogateModel::evaluate(std::span<const double> point) const {
  if (point.size() != variables_.size())
    throw InvalidInput("model expects " + std::to_string(variables_.size()) +
                       " parameters, got " + std::to_string(point.size()));
  const double v = eval(*root_, point);
  if (!std::isfinite(v)) throw NumericalError("model evaluation produced a non-finite value");
  return v;
}

std::string SurrogateModel::to_string() const {
  std::ostringstream os;
  for (const auto& v : variables_) {
    const auto& d = v.distribution;
    os << v.name << " ~ " << (d.kind == Distribution::Kind::Gaussian ? "N(" : "U(")
       << format_number(d.first) << ", " << format_number(d.second) << ")\n";
  }
  os << "f = ";
  print(*root_, variables_, os);
  os << '\n';
  return os.str();
}

bool SurrogateModel::operator==(const SurrogateModel& other) const {
  return variables_ == other.variables_ && same_tree(root_.get(), other.root_.get());
}

const char* const kSyntheticModelSource =
    "xi1 ~ N(0, 1)\n"
    "xi2 ~ N(0, 1)\n"
    "xi3 ~ N(0, 1)\n"
    "xi4 ~ U(-0.5, 0.5)\n"
    "f = xi1 + 0.5*exp(0.52*xi2) + 0.3*sqrt(2.1*abs(xi4)) + sin(xi3)*cos(3.91*xi4)\n";

SurrogateModel synthetic_model() { return SurrogateModel::parse(kSyntheticModelSource); }

SurrogateModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return SurrogateModel::parse(buf.str());
}

SampleSet sample(const SurrogateModel& model, std::size_t count, std::uint64_t seed) {
  if (count < 2) throw InvalidInput("sample count must be at least 2");
  RandomStream rng(seed);
  SampleSet out;
  out.seed = seed;
  out.stream_scheme = kStreamScheme;
  out.values.resize(count);
  std::vector<double> point(model.dimension());
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t d = 0; d < point.size(); ++d) {
      const Distribution& dist = model.variables()[d].distribution;
      point[d] = dist.kind == Distribution::Kind::Gaussian
                     ? dist.first + dist.second * rng.normal()
                     : dist.first + (dist.second - dist.first) * rng.uniform();
    }
    out.values[i] = model.evaluate(point);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sample files

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::optional<double> parse_real(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

std::vector<double> read_samples(std::istream& in) {
  std::vector<double> out;
  std::string line;
  std::size_t lineno = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto comma = view.find(',');
    const std::string_view field = comma == std::string_view::npos ? view : view.substr(0, comma);
    const auto value = parse_real(field);
    if (!value) {
      if (first_content) {
        first_content = false;
        continue;  // header
      }
      throw InvalidInput("sample file line " + std::to_string(lineno) + ": cannot parse '" +
                         std::string(field) + "'");
    }
    first_content = false;
    if (!std::isfinite(*value))
      throw InvalidInput("sample file line " + std::to_string(lineno) + ": non-finite value");
    out.push_back(*value);
  }
  return out;
}

std::vector<double> load_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open sample file '" + path + "'");
  return read_samples(in);
}

void write_samples(std::ostream& out, std::span<const double> values) {
  for (double v : values) out << format_number(v) << '\n';
}

void save_samples(const std::string& path, std::span<const double> values) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write sample file '" + path + "'");
  write_samples(out, values);
  if (!out) throw IoError("error while writing '" + path + "'");
}

}  // namespace gpcq
