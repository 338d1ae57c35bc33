#include "nst/parser.hpp"

#include <utility>

#include "nst/errors.hpp"
#include "nst/lexer.hpp"
#include "nst/printer.hpp"

namespace nst {

namespace {

class Parser {
 public:
  Parser(std::string_view source, const ParseOptions& options)
      : tokens_(lex(source)), options_(options) {}

  StrategyTemplate parse_one() {
    StrategyTemplate tmpl = parse_template_block();
    expect_end();
    return tmpl;
  }

  std::vector<StrategyTemplate> parse_all() {
    std::vector<StrategyTemplate> templates;
    templates.push_back(parse_template_block());
    while (!at_end()) templates.push_back(parse_template_block());
    return templates;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }
  bool at_end() const { return peek().kind == TokenKind::End; }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    throw SyntaxError(t.span, expected, "'" + t.lexeme + "'");
  }

  bool peek_is(std::string_view lexeme) const { return peek().lexeme == lexeme; }

  Token expect_lexeme(std::string_view lexeme) {
    if (!peek_is(lexeme)) fail("'" + std::string(lexeme) + "'");
    return next();
  }

  Token expect_number() {
    if (peek().kind != TokenKind::Number) fail("NUMBER");
    return next();
  }

  void expect_end() {
    if (!at_end()) fail("end of input (one template per source)");
  }

  StrategyTemplate parse_template_block() {
    StrategyTemplate tmpl;
    tmpl.fixed_threshold_default = options_.fixed_threshold_default;
    if (peek_is("acceptance")) {
      tmpl.kind = TemplateKind::Acceptance;
      next();
    } else if (peek_is("bidding")) {
      tmpl.kind = TemplateKind::Bidding;
      next();
    } else {
      fail("'acceptance' or 'bidding'");
    }
    expect_lexeme("template");
    if (peek().kind != TokenKind::String) fail("a quoted template name");
    tmpl.name = next().lexeme;
    expect_lexeme("{");
    while (!peek_is("}")) tmpl.phases.push_back(parse_phase(tmpl));
    expect_lexeme("}");
    check_template_with_span(tmpl);
    return tmpl;
  }

  Phase parse_phase(const StrategyTemplate& tmpl) {
    expect_lexeme("phase");
    Phase phase;
    expect_lexeme("[");
    phase.t_start = expect_number().number;
    expect_lexeme(",");
    phase.t_end = expect_number().number;
    // Closedness of the final bound is positional; both spellings parse.
    if (peek_is(")") || peek_is("]")) {
      next();
    } else {
      fail("')' or ']'");
    }
    expect_lexeme("{");
    if (peek_is("accept")) {
      if (tmpl.kind != TemplateKind::Acceptance) {
        throw StructureError("accept rule inside a bidding template", peek().span);
      }
      parse_accept_rule(phase);
    } else if (peek_is("bid")) {
      if (tmpl.kind != TemplateKind::Bidding) {
        throw StructureError("bid rule inside an acceptance template", peek().span);
      }
      while (peek_is("bid")) phase.bids.push_back(parse_bid_rule());
    } else {
      fail("'accept' or 'bid'");
    }
    expect_lexeme("}");
    return phase;
  }

  void parse_accept_rule(Phase& phase) {
    expect_lexeme("accept");
    expect_lexeme("if");
    expect_lexeme("U");
    expect_lexeme("(");
    expect_lexeme("offer");
    expect_lexeme(")");
    expect_lexeme(">=");
    std::vector<AcceptanceTactic> tactics;
    parse_threshold_expr(tactics, /*allow_max=*/true);
    phase.accept_tactics = std::move(tactics);
    phase.condition = build_condition(phase.accept_tactics);
  }

  // One threshold expression; a nested max is flattened into the same list.
  void parse_threshold_expr(std::vector<AcceptanceTactic>& tactics, bool allow_max) {
    if (peek_is("max")) {
      if (!allow_max) {
        // nested max: legal per the grammar, flattened into the outer list
      }
      next();
      expect_lexeme("(");
      parse_threshold_expr(tactics, true);
      expect_lexeme(",");
      parse_threshold_expr(tactics, true);
      while (peek_is(",")) {
        next();
        parse_threshold_expr(tactics, true);
      }
      expect_lexeme(")");
      return;
    }
    if (peek_is("Q")) {
      next();
      expect_lexeme("(");
      auto [slope, intercept] = parse_linear();
      expect_lexeme(")");
      tactics.push_back(QuantileConcession{slope, intercept});
      return;
    }
    if (peek_is("u_dyn")) {
      next();
      tactics.push_back(DynamicThreshold{});
      return;
    }
    if (peek_is("u_fixed")) {
      next();
      tactics.push_back(FixedThreshold{options_.fixed_threshold_default, true});
      return;
    }
    if (peek_is("U")) {
      next();
      expect_lexeme("(");
      expect_lexeme("next_own");
      expect_lexeme(")");
      tactics.push_back(OwnNextBidUtility{});
      return;
    }
    if (peek().kind == TokenKind::Number) {
      const Token t = next();
      if (!(t.number >= 0.0 && t.number <= 1.0)) {
        throw StructureError("threshold constant " + t.lexeme + " outside [0, 1]", t.span);
      }
      tactics.push_back(FixedThreshold{t.number, false});
      return;
    }
    fail("a threshold expression (max, Q, u_dyn, u_fixed, U(next_own) or NUMBER)");
  }

  std::pair<double, double> parse_linear() {
    const Token first = expect_number();
    if (!peek_is("*")) return {0.0, first.number};
    next();
    expect_lexeme("t");
    double intercept = 0.0;
    if (peek_is("+")) {
      next();
      intercept = expect_number().number;
    }
    return {first.number, intercept};
  }

  BidChoice parse_bid_rule() {
    expect_lexeme("bid");
    BidChoice choice;
    if (peek_is("boulware")) {
      const Token kw = next();
      BoulwareBid b;
      if (peek_is("(")) {
        next();
        b.explicit_params = true;
        b.e = expect_number().number;
        expect_lexeme(",");
        b.u_min = expect_number().number;
        expect_lexeme(",");
        b.u_max = expect_number().number;
        expect_lexeme(")");
        if (!(b.e > 0.0)) throw StructureError("boulware exponent must be > 0", kw.span);
        if (!(b.u_min >= 0.0 && b.u_min < b.u_max && b.u_max <= 1.0)) {
          throw StructureError("boulware utility bounds must satisfy 0 <= u_min < u_max <= 1",
                               kw.span);
        }
      }
      choice.tactic = b;
    } else if (peek_is("pareto")) {
      next();
      expect_lexeme("(");
      auto [slope, intercept] = parse_linear();
      expect_lexeme(")");
      choice.tactic = ParetoWeightedBid{slope, intercept};
    } else if (peek_is("opponent_greedy")) {
      next();
      choice.tactic = OpponentGreedyBid{};
    } else if (peek_is("random_above_threshold")) {
      next();
      choice.tactic = RandomAboveThresholdBid{};
    } else {
      fail("a bidding tactic (boulware, pareto, opponent_greedy, random_above_threshold)");
    }
    return choice;
  }

  void check_template_with_span(const StrategyTemplate& tmpl) {
    // Re-raise the structural checks; spans were already attached where a
    // specific token was at fault.
    check_template(tmpl);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  ParseOptions options_;
};

void decompose_walk(const MathExpr& e, ParsedUnits& units) {
  switch (e.kind) {
    case ExprKind::Constant:
      units.constants.insert(e.value);
      break;
    case ExprKind::TimeSymbol:
      units.variables.insert("t");
      break;
    case ExprKind::Symbol:
      units.variables.insert(symbol_name(e.symbol));
      break;
    case ExprKind::Sum:
      units.operators.insert("+");
      break;
    case ExprKind::Product:
      units.operators.insert("*");
      break;
    case ExprKind::Comparison:
      units.operators.insert(">=");
      break;
    case ExprKind::FunctionApp:
      units.functions.insert(func_name(e.func));
      if (e.func == FuncKind::Quantile) {
        // Q ranges over the utilities of the opponent bid history.
        units.variables.insert("history");
      }
      if (e.func == FuncKind::OwnUtility && e.children.size() == 1 &&
          e.children[0]->kind == ExprKind::Symbol) {
        // An applied utility is itself an identifiable unit.
        units.variables.insert("U(" + symbol_name(e.children[0]->symbol) + ")");
      }
      break;
  }
  for (const ExprPtr& c : e.children) decompose_walk(*c, units);
}

}  // namespace

StrategyTemplate parse_template(std::string_view source, const ParseOptions& options) {
  return Parser(source, options).parse_one();
}

std::vector<StrategyTemplate> parse_templates(std::string_view source,
                                              const ParseOptions& options) {
  return Parser(source, options).parse_all();
}

ParsedUnits decompose(const ExprPtr& expr) {
  ParsedUnits units;
  units.structure = expr;
  if (expr) decompose_walk(*expr, units);
  return units;
}

std::vector<double> template_constants(const StrategyTemplate& tmpl) {
  std::vector<double> constants;
  auto add = [&constants](double v) {
    for (double c : constants) {
      if (c == v) return;
    }
    constants.push_back(v);
  };
  for (const Phase& p : tmpl.phases) {
    add(p.t_start);
    add(p.t_end);
    if (p.condition) {
      for (double c : decompose(p.condition).constants) add(c);
    }
    for (const BidChoice& choice : p.bids) {
      if (!choice.selected) continue;
      if (const auto* b = std::get_if<BoulwareBid>(&choice.tactic)) {
        if (b->explicit_params) {
          add(b->e);
          add(b->u_min);
          add(b->u_max);
        }
      } else if (const auto* pw = std::get_if<ParetoWeightedBid>(&choice.tactic)) {
        // exactly the numbers the canonical rendering of a*t + b contains
        for (double c : decompose(make_linear(pw->slope, pw->intercept)).constants) add(c);
      }
    }
  }
  return constants;
}

}  // namespace nst
