// Copyright 2026 The p4cep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "p4cep/program.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <map>
#include <set>
#include <utility>

namespace p4cep {
namespace {

class Resolver {
 public:
  explicit Resolver(const RuleAst& ast) : ast_(ast) {}

  CompiledProgram Run() {
    for (const WindowDecl& w : ast_.windows) {
      WindowPlan plan;
      plan.name = w.name;
      plan.capacity = static_cast<uint32_t>(w.size);
      plan.kind = w.is_predicate_window() ? PlanKind::kPredicate
                                          : PlanKind::kValue;
      prog_.windows.push_back(std::move(plan));
      names_.insert(w.name);
    }
    for (const ComplexEventDecl& e : ast_.events) names_.insert(e.name);

    for (size_t i = 0; i < ast_.windows.size(); ++i) {
      const WindowDecl& w = ast_.windows[i];
      if (const auto* f = std::get_if<FieldRef>(&w.value)) {
        prog_.windows[i].source_field = InternField(*f);
      } else {
        prog_.windows[i].predicate =
            ResolvePredicate(std::get<PredicateExpr>(w.value), std::nullopt);
      }
    }

    PredicateTable table = extract_predicates(ast_);
    if (table.size() >= kMaxPredicates) {
      throw Error(ErrorKind::kValidation, "too many distinct predicates");
    }
    for (const PredicateEntry& entry : table.entries) {
      prog_.predicates.push_back(ResolvePredicate(entry.expr, entry.owner_event));
    }

    for (size_t i = 0; i < ast_.events.size(); ++i) {
      const ComplexEventDecl& e = ast_.events[i];
      MachinePlan m;
      m.name = e.name;
      m.machine = apply_strategy(
          determinize(build_nfa(label_pattern(e.pattern, table, i))),
          e.strategy);
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, uint64_t>) {
              m.return_value = Operand::Const(v);
            } else if constexpr (std::is_same_v<T, FieldRef>) {
              m.return_value = Operand::Field(InternField(v));
            } else {
              m.return_value = ResolveAgg(v, i);
            }
          },
          e.return_value);
      prog_.machines.push_back(std::move(m));
    }
    return std::move(prog_);
  }

 private:
  uint32_t InternField(const FieldRef& f) {
    if (f.width <= 0) {
      throw Error(ErrorKind::kValidation,
                  "field '" + f.name() + "' has no bound width; validate first",
                  f.loc);
    }
    std::string name = f.name();
    if (auto idx = prog_.field_index(name)) return *idx;
    prog_.fields.push_back({name, f.width});
    return static_cast<uint32_t>(prog_.fields.size() - 1);
  }

  void NoteAggregate(uint32_t plan, AggFunc func) {
    std::vector<AggFunc>& aggs = prog_.windows[plan].aggregates;
    if (std::find(aggs.begin(), aggs.end(), func) == aggs.end()) {
      aggs.push_back(func);
      std::sort(aggs.begin(), aggs.end());
    }
  }

  Operand ResolveAgg(const AggRef& agg, std::optional<size_t> owner) {
    uint32_t plan;
    if (agg.targets_window()) {
      const std::string& name = std::get<WindowName>(agg.target).name;
      auto it = std::find_if(prog_.windows.begin(), prog_.windows.end(),
                             [&](const WindowPlan& w) {
                               return w.name == name && w.is_ring();
                             });
      if (it == prog_.windows.end()) {
        throw Error(ErrorKind::kValidation, "unknown window '" + name + "'");
      }
      plan = static_cast<uint32_t>(it - prog_.windows.begin());
    } else {
      if (!owner) {
        throw Error(ErrorKind::kValidation,
                    "field aggregate outside of a complex event");
      }
      plan = RunningPlan(std::get<FieldRef>(agg.target),
                         static_cast<uint32_t>(*owner));
    }
    NoteAggregate(plan, agg.func);
    return Operand::Aggregate(agg.func, plan);
  }

  uint32_t RunningPlan(const FieldRef& field, uint32_t owner) {
    uint32_t source = InternField(field);
    auto key = std::pair{owner, source};
    if (auto it = running_.find(key); it != running_.end()) return it->second;
    WindowPlan plan;
    std::string base =
        ast_.events[owner].name + "_" + field.header + "_" + field.field;
    plan.name = base;
    for (int suffix = 1; names_.count(plan.name); ++suffix) {
      plan.name = base + "_" + std::to_string(suffix);
    }
    names_.insert(plan.name);
    plan.kind = PlanKind::kRunning;
    plan.capacity = 0;
    plan.source_field = source;
    plan.owner_machine = owner;
    prog_.windows.push_back(std::move(plan));
    uint32_t index = static_cast<uint32_t>(prog_.windows.size() - 1);
    running_.emplace(key, index);
    return index;
  }

  Predicate ResolvePredicate(const PredicateExpr& p,
                             std::optional<size_t> owner) {
    Predicate out;
    if (const auto* f = std::get_if<FieldRef>(&p.lhs)) {
      out.lhs = Operand::Field(InternField(*f));
    } else {
      out.lhs = ResolveAgg(std::get<AggRef>(p.lhs), owner);
    }
    out.cmp = p.cmp;
    if (const auto* c = std::get_if<uint64_t>(&p.rhs)) {
      out.rhs = Operand::Const(*c);
    } else {
      out.rhs = Operand::Field(InternField(std::get<FieldRef>(p.rhs)));
    }
    return out;
  }

  const RuleAst& ast_;
  CompiledProgram prog_;
  std::set<std::string> names_;
  std::map<std::pair<uint32_t, uint32_t>, uint32_t> running_;
};

// ------------------------------------------------------------ serializing

const char* FuncToken(AggFunc f) { return AggFuncName(f); }

std::string OperandToken(const Operand& op) {
  switch (op.kind) {
    case Operand::Kind::kConst:
      return "const:" + std::to_string(op.constant);
    case Operand::Kind::kField:
      return "field:" + std::to_string(op.field);
    case Operand::Kind::kAggregate:
      return std::string("agg:") + FuncToken(op.func) + ":" +
             std::to_string(op.plan);
  }
  return "?";
}

std::string AggList(const std::vector<AggFunc>& aggs) {
  if (aggs.empty()) return "-";
  std::string out;
  for (AggFunc f : aggs) {
    if (!out.empty()) out += ",";
    out += FuncToken(f);
  }
  return out;
}

class Reader {
 public:
  explicit Reader(std::string_view text) {
    int line_no = 0;
    while (!text.empty()) {
      size_t nl = text.find('\n');
      std::string_view line = text.substr(0, nl);
      text = nl == std::string_view::npos ? std::string_view{}
                                          : text.substr(nl + 1);
      ++line_no;
      if (line.empty()) continue;
      std::vector<std::string> toks;
      size_t pos = 0;
      while (pos < line.size()) {
        size_t sp = line.find(' ', pos);
        if (sp == std::string_view::npos) sp = line.size();
        if (sp > pos) toks.emplace_back(line.substr(pos, sp - pos));
        pos = sp + 1;
      }
      lines_.push_back({line_no, std::move(toks)});
    }
  }

  const std::vector<std::string>& Next(const std::string& keyword,
                                       size_t min_tokens) {
    if (cur_ >= lines_.size()) Fail("unexpected end, expected '" + keyword + "'");
    const auto& [line_no, toks] = lines_[cur_++];
    line_ = line_no;
    if (toks.empty() || toks[0] != keyword) {
      Fail("expected '" + keyword + "' record");
    }
    if (toks.size() < min_tokens) Fail("truncated '" + keyword + "' record");
    return toks;
  }

  bool Done() const { return cur_ >= lines_.size(); }

  uint64_t Number(const std::string& s) {
    if (s.empty() || s.size() > 20 ||
        !std::all_of(s.begin(), s.end(), ::isdigit)) {
      Fail("expected number, got '" + s + "'");
    }
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      Fail("number out of range: '" + s + "'");
    }
  }

  uint32_t Index(const std::string& s) {
    uint64_t v = Number(s);
    if (v > 0xFFFFFFFFull) Fail("index out of range: '" + s + "'");
    return static_cast<uint32_t>(v);
  }

  AggFunc Func(const std::string& s) {
    for (AggFunc f : {AggFunc::kSum, AggFunc::kMin, AggFunc::kMax,
                      AggFunc::kCount, AggFunc::kAvg}) {
      if (s == AggFuncName(f)) return f;
    }
    Fail("unknown aggregate '" + s + "'");
  }

  CmpOp Cmp(const std::string& s) {
    for (CmpOp op : {CmpOp::kEq, CmpOp::kNe, CmpOp::kLt, CmpOp::kLe,
                     CmpOp::kGt, CmpOp::kGe}) {
      if (s == CmpOpSymbol(op)) return op;
    }
    Fail("unknown comparison '" + s + "'");
  }

  Operand ParseOperand(const std::string& s) {
    if (s.rfind("const:", 0) == 0) return Operand::Const(Number(s.substr(6)));
    if (s.rfind("field:", 0) == 0) return Operand::Field(Index(s.substr(6)));
    if (s.rfind("agg:", 0) == 0) {
      size_t colon = s.find(':', 4);
      if (colon == std::string::npos) Fail("malformed operand '" + s + "'");
      return Operand::Aggregate(Func(s.substr(4, colon - 4)),
                                Index(s.substr(colon + 1)));
    }
    Fail("malformed operand '" + s + "'");
  }

  std::vector<AggFunc> Aggs(const std::string& s) {
    std::vector<AggFunc> out;
    if (s == "-") return out;
    size_t pos = 0;
    while (pos <= s.size()) {
      size_t comma = s.find(',', pos);
      if (comma == std::string::npos) comma = s.size();
      out.push_back(Func(s.substr(pos, comma - pos)));
      pos = comma + 1;
    }
    return out;
  }

  [[noreturn]] void Fail(const std::string& message) const {
    throw Error(ErrorKind::kInvalidProgram, message, {line_ > 0 ? line_ : 1, 1});
  }

 private:
  std::vector<std::pair<int, std::vector<std::string>>> lines_;
  size_t cur_ = 0;
  int line_ = 0;
};

void CheckOperand(const CompiledProgram& p, const Operand& op,
                  const std::string& where) {
  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::kInvalidProgram, where + ": " + what);
  };
  switch (op.kind) {
    case Operand::Kind::kConst:
      return;
    case Operand::Kind::kField:
      if (op.field >= p.fields.size()) fail("field index out of range");
      return;
    case Operand::Kind::kAggregate: {
      if (op.plan >= p.windows.size()) fail("window index out of range");
      const WindowPlan& w = p.windows[op.plan];
      if (!std::binary_search(w.aggregates.begin(), w.aggregates.end(),
                              op.func)) {
        fail("aggregate not declared on window '" + w.name + "'");
      }
      return;
    }
  }
}

}  // namespace

Operand Operand::Const(uint64_t v) {
  Operand op;
  op.kind = Kind::kConst;
  op.constant = v;
  return op;
}

Operand Operand::Field(uint32_t index) {
  Operand op;
  op.kind = Kind::kField;
  op.field = index;
  return op;
}

Operand Operand::Aggregate(AggFunc func, uint32_t plan) {
  Operand op;
  op.kind = Kind::kAggregate;
  op.func = func;
  op.plan = plan;
  return op;
}

const char* PlanKindName(PlanKind kind) {
  switch (kind) {
    case PlanKind::kValue:
      return "value";
    case PlanKind::kPredicate:
      return "predicate";
    case PlanKind::kRunning:
      return "running";
  }
  return "?";
}

std::optional<uint32_t> CompiledProgram::field_index(
    std::string_view name) const {
  for (size_t i = 0; i < fields.size(); ++i) {
    if (fields[i].name == name) return static_cast<uint32_t>(i);
  }
  return std::nullopt;
}

CompiledProgram compile(const RuleAst& ast) { return Resolver(ast).Run(); }

CompiledProgram compile_rules(std::string_view rules, const HeaderSet& headers) {
  return compile(validate(parse_rules(rules), headers));
}

void check_program(const CompiledProgram& p) {
  auto fail = [](const std::string& what) {
    throw Error(ErrorKind::kInvalidProgram, what);
  };
  if (p.predicates.size() >= kMaxPredicates) fail("too many predicates");
  std::set<std::string> names;
  for (const ProgramField& f : p.fields) {
    if (f.width < 1 || f.width > 64) fail("field '" + f.name + "' has bad width");
  }
  for (size_t i = 0; i < p.windows.size(); ++i) {
    const WindowPlan& w = p.windows[i];
    std::string where = "window '" + w.name + "'";
    if (w.name.empty() || !names.insert(w.name).second) {
      fail(where + ": empty or duplicate name");
    }
    if (w.width < 1 || w.width > 64) fail(where + ": bad width");
    if (!std::is_sorted(w.aggregates.begin(), w.aggregates.end()) ||
        std::adjacent_find(w.aggregates.begin(), w.aggregates.end()) !=
            w.aggregates.end()) {
      fail(where + ": aggregates not sorted and unique");
    }
    bool ring = w.is_ring();
    if (ring && w.capacity == 0) fail(where + ": zero capacity");
    if (!ring && w.capacity != 0) fail(where + ": running plan with capacity");
    for (AggFunc f : w.aggregates) {
      if (f == AggFunc::kAvg &&
          (!ring || (w.capacity & (w.capacity - 1)) != 0)) {
        fail(where + ": avg needs a power-of-two ring");
      }
      if (f == AggFunc::kCount && w.kind != PlanKind::kPredicate) {
        fail(where + ": count needs a predicate window");
      }
    }
    if (w.kind == PlanKind::kPredicate) {
      if (std::bit_width(w.capacity) > w.width) {
        fail(where + ": width too narrow to count to capacity");
      }
      CheckOperand(p, w.predicate.lhs, where);
      CheckOperand(p, w.predicate.rhs, where);
      for (const Operand* op : {&w.predicate.lhs, &w.predicate.rhs}) {
        if (op->kind == Operand::Kind::kAggregate &&
            p.windows[op->plan].kind != PlanKind::kValue) {
          fail(where + ": predicate may only aggregate value windows");
        }
      }
    } else if (w.source_field >= p.fields.size()) {
      fail(where + ": source field out of range");
    }
    if (w.kind == PlanKind::kRunning && w.owner_machine >= p.machines.size()) {
      fail(where + ": owner machine out of range");
    }
  }
  for (size_t i = 0; i < p.predicates.size(); ++i) {
    std::string where = "predicate " + std::to_string(i);
    CheckOperand(p, p.predicates[i].lhs, where);
    CheckOperand(p, p.predicates[i].rhs, where);
  }
  for (const MachinePlan& m : p.machines) {
    std::string where = "machine '" + m.name + "'";
    if (m.name.empty() || !names.insert(m.name).second) {
      fail(where + ": empty or duplicate name");
    }
    if (std::string why = check_machine(m.machine); !why.empty()) {
      fail(where + ": " + why);
    }
    for (const TransitionRow& r : m.machine.rows) {
      if (r.x >= p.predicates.size()) fail(where + ": unknown predicate id");
    }
    CheckOperand(p, m.return_value, where + " return value");
  }
}

std::string serialize_program(const CompiledProgram& p) {
  std::string out = "p4cep-program 1\n";
  out += "fields " + std::to_string(p.fields.size()) + "\n";
  for (size_t i = 0; i < p.fields.size(); ++i) {
    out += "field " + std::to_string(i) + " " + p.fields[i].name + " " +
           std::to_string(p.fields[i].width) + "\n";
  }
  out += "windows " + std::to_string(p.windows.size()) + "\n";
  for (size_t i = 0; i < p.windows.size(); ++i) {
    const WindowPlan& w = p.windows[i];
    out += "window " + std::to_string(i) + " " + w.name + " " +
           PlanKindName(w.kind) + " " + std::to_string(w.capacity) + " " +
           std::to_string(w.width) + " ";
    switch (w.kind) {
      case PlanKind::kValue:
        out += "field:" + std::to_string(w.source_field);
        break;
      case PlanKind::kPredicate:
        out += OperandToken(w.predicate.lhs) + " " + CmpOpSymbol(w.predicate.cmp) +
               " " + OperandToken(w.predicate.rhs);
        break;
      case PlanKind::kRunning:
        out += "field:" + std::to_string(w.source_field) + " owner " +
               std::to_string(w.owner_machine);
        break;
    }
    out += " aggs " + AggList(w.aggregates) + "\n";
  }
  out += "predicates " + std::to_string(p.predicates.size()) + "\n";
  for (size_t i = 0; i < p.predicates.size(); ++i) {
    const Predicate& pr = p.predicates[i];
    out += "predicate " + std::to_string(i) + " " + OperandToken(pr.lhs) + " " +
           CmpOpSymbol(pr.cmp) + " " + OperandToken(pr.rhs) + "\n";
  }
  out += "machines " + std::to_string(p.machines.size()) + "\n";
  for (size_t i = 0; i < p.machines.size(); ++i) {
    const MachinePlan& m = p.machines[i];
    std::string accepting;
    for (StateId s : m.machine.accepting) {
      if (!accepting.empty()) accepting += ",";
      accepting += std::to_string(s);
    }
    if (accepting.empty()) accepting = "-";
    out += "machine " + std::to_string(i) + " " + m.name + " " +
           StrategyName(m.machine.strategy) + " states " +
           std::to_string(m.machine.num_states) + " initial " +
           std::to_string(m.machine.initial) + " accepting " + accepting +
           " return " + OperandToken(m.return_value) + " rows " +
           std::to_string(m.machine.rows.size()) + "\n";
    for (const TransitionRow& r : m.machine.rows) {
      out += "row " + std::to_string(r.q) + " " + std::to_string(r.x) + " " +
             std::to_string(r.next) + " " + (r.is_accepting ? "1" : "0") + "\n";
    }
  }
  out += "end\n";
  return out;
}

CompiledProgram parse_program(std::string_view text) {
  Reader in(text);
  CompiledProgram p;
  const auto& header = in.Next("p4cep-program", 2);
  if (header[1] != "1") in.Fail("unsupported program version '" + header[1] + "'");

  uint64_t n = in.Number(in.Next("fields", 2)[1]);
  for (uint64_t i = 0; i < n; ++i) {
    const auto& t = in.Next("field", 4);
    if (in.Number(t[1]) != i) in.Fail("field index out of order");
    p.fields.push_back({t[2], static_cast<int>(in.Index(t[3]))});
  }

  n = in.Number(in.Next("windows", 2)[1]);
  for (uint64_t i = 0; i < n; ++i) {
    const auto& t = in.Next("window", 8);
    if (in.Number(t[1]) != i) in.Fail("window index out of order");
    WindowPlan w;
    w.name = t[2];
    w.capacity = in.Index(t[4]);
    w.width = static_cast<int>(in.Index(t[5]));
    size_t rest = 6;
    auto source = [&](const std::string& s) {
      Operand op = in.ParseOperand(s);
      if (op.kind != Operand::Kind::kField) in.Fail("window source must be a field");
      return op.field;
    };
    if (t[3] == "value") {
      w.kind = PlanKind::kValue;
      w.source_field = source(t[rest++]);
    } else if (t[3] == "predicate") {
      if (t.size() < 11) in.Fail("truncated predicate window");
      w.kind = PlanKind::kPredicate;
      w.predicate.lhs = in.ParseOperand(t[rest++]);
      w.predicate.cmp = in.Cmp(t[rest++]);
      w.predicate.rhs = in.ParseOperand(t[rest++]);
    } else if (t[3] == "running") {
      if (t.size() < 11 || t[7] != "owner") in.Fail("malformed running window");
      w.kind = PlanKind::kRunning;
      w.source_field = source(t[rest++]);
      ++rest;
      w.owner_machine = in.Index(t[rest++]);
    } else {
      in.Fail("unknown window kind '" + t[3] + "'");
    }
    if (t.size() != rest + 2 || t[rest] != "aggs") in.Fail("malformed window aggs");
    w.aggregates = in.Aggs(t[rest + 1]);
    p.windows.push_back(std::move(w));
  }

  n = in.Number(in.Next("predicates", 2)[1]);
  for (uint64_t i = 0; i < n; ++i) {
    const auto& t = in.Next("predicate", 5);
    if (in.Number(t[1]) != i) in.Fail("predicate index out of order");
    p.predicates.push_back(
        {in.ParseOperand(t[2]), in.Cmp(t[3]), in.ParseOperand(t[4])});
  }

  n = in.Number(in.Next("machines", 2)[1]);
  for (uint64_t i = 0; i < n; ++i) {
    const auto& t = in.Next("machine", 14);
    if (in.Number(t[1]) != i) in.Fail("machine index out of order");
    if (t[4] != "states" || t[6] != "initial" || t[8] != "accepting" ||
        t[10] != "return" || t[12] != "rows") {
      in.Fail("malformed machine record");
    }
    MachinePlan m;
    m.name = t[2];
    if (t[3] == "strict") {
      m.machine.strategy = Strategy::kStrict;
    } else if (t[3] == "skip-till-next-match") {
      m.machine.strategy = Strategy::kSkipTillNextMatch;
    } else {
      in.Fail("unknown strategy '" + t[3] + "'");
    }
    m.machine.num_states = in.Index(t[5]);
    m.machine.initial = in.Index(t[7]);
    if (t[9] != "-") {
      size_t pos = 0;
      const std::string& s = t[9];
      while (pos <= s.size()) {
        size_t comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        m.machine.accepting.push_back(in.Index(s.substr(pos, comma - pos)));
        pos = comma + 1;
      }
    }
    m.return_value = in.ParseOperand(t[11]);
    uint64_t rows = in.Number(t[13]);
    for (uint64_t r = 0; r < rows; ++r) {
      const auto& rt = in.Next("row", 5);
      uint64_t acc = in.Number(rt[4]);
      if (acc > 1) in.Fail("is_accepting must be 0 or 1");
      m.machine.rows.push_back(
          {in.Index(rt[1]), in.Index(rt[2]), in.Index(rt[3]), acc == 1});
    }
    p.machines.push_back(std::move(m));
  }
  in.Next("end", 1);
  if (!in.Done()) in.Fail("trailing records after 'end'");
  check_program(p);
  return p;
}

std::string describe_operand(const CompiledProgram& p, const Operand& op) {
  switch (op.kind) {
    case Operand::Kind::kConst:
      return std::to_string(op.constant);
    case Operand::Kind::kField:
      return op.field < p.fields.size() ? p.fields[op.field].name : "?";
    case Operand::Kind::kAggregate:
      return std::string(AggFuncName(op.func)) + "(" +
             (op.plan < p.windows.size() ? p.windows[op.plan].name : "?") + ")";
  }
  return "?";
}

std::string describe_predicate(const CompiledProgram& p, const Predicate& pr) {
  return describe_operand(p, pr.lhs) + " " + CmpOpSymbol(pr.cmp) + " " +
         describe_operand(p, pr.rhs);
}

}  // namespace p4cep
