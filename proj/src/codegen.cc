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

#include "p4cep/codegen.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>
#include <utility>

namespace p4cep {
namespace {

constexpr int kStateWidth = 16;
constexpr int kSymbolWidth = 16;
constexpr int kIndexWidth = 32;
constexpr int kReturnWidth = 64;

std::string Lit(int width, uint64_t v) {
  return std::to_string(width) + "w" + std::to_string(v);
}

std::string Bits(int width) { return "bit<" + std::to_string(width) + ">"; }

int BitsNeeded(uint64_t v) { return v == 0 ? 1 : std::bit_width(v); }

bool Has(const WindowPlan& w, AggFunc f) {
  return std::find(w.aggregates.begin(), w.aggregates.end(), f) !=
         w.aggregates.end();
}

// Writes indented lines.
class Out {
 public:
  void Line(const std::string& s = {}) {
    if (!s.empty()) buf_ << std::string(depth_ * 4, ' ') << s;
    buf_ << "\n";
  }
  void Open(const std::string& s) {
    Line(s + " {");
    ++depth_;
  }
  void Close(const std::string& suffix = {}) {
    --depth_;
    Line("}" + suffix);
  }
  std::string str() const { return buf_.str(); }

 private:
  std::ostringstream buf_;
  int depth_ = 0;
};

class Generator {
 public:
  Generator(const CompiledProgram& p, const CodegenOptions& o)
      : p_(p), o_(o), prefix_("p4cep_" + sanitize_identifier(o.name)) {}

  std::string Run() {
    std::string guard = prefix_ + "_CEP_P4_";
    std::transform(guard.begin(), guard.end(), guard.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    out_.Line("// Generated by p4cep for program '" + o_.name + "'. Do not edit.");
    out_.Line("//");
    out_.Line("// Include from a v1model program and apply the control from its");
    out_.Line("// ingress:");
    out_.Line("//");
    out_.Line("//   #define P4CEP_HEADERS_T headers   // the program's header struct");
    out_.Line("//   #include \"" + sanitize_identifier(o_.name) + "_cep.p4\"");
    out_.Line("//   ...");
    out_.Line("//   " + control_name(o_) + "() cep;");
    out_.Line("//   cep.apply(hdr, meta.cep, standard_metadata);");
    out_.Line("#ifndef " + guard);
    out_.Line("#define " + guard);
    out_.Line();
    out_.Line("#ifndef P4CEP_HEADERS_T");
    out_.Line("#define P4CEP_HEADERS_T headers");
    out_.Line("#endif");
    out_.Line();
    out_.Line("const " + Bits(kSymbolWidth) + " " + NoMatch() + " = " +
              Lit(kSymbolWidth, kNoMatch) + ";");
    out_.Line();
    EmitMetadata();
    out_.Line();
    EmitControl();
    out_.Line();
    out_.Line("#endif  // " + guard);
    return out_.str();
  }

 private:
  std::string NoMatch() const {
    std::string s = prefix_ + "_NO_MATCH";
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    return s;
  }
  std::string Meta() const { return prefix_ + "_metadata_t"; }
  std::string W(const WindowPlan& w) const { return sanitize_identifier(w.name); }
  std::string M(const MachinePlan& m) const { return sanitize_identifier(m.name); }

  // ------------------------------------------------------------ metadata

  void EmitMetadata() {
    out_.Open("struct " + Meta());
    out_.Line(Bits(kSymbolWidth) + " m_x;");
    out_.Line(Bits(kStateWidth) + " m_q;");
    out_.Line(Bits(kStateWidth) + " m_qn;");
    out_.Line("bit<1> m_accepting;");
    out_.Line("bit<1> resubmit;");
    for (const WindowPlan& w : p_.windows) {
      std::string n = W(w);
      std::string vt = Bits(w.width);
      if (w.is_ring()) {
        out_.Line(Bits(kIndexWidth) + " " + n + "_head;");
        out_.Line(Bits(kIndexWidth) + " " + n + "_fill;");
        out_.Line(Bits(kIndexWidth) + " " + n + "_iter;");
        if (w.kind == PlanKind::kPredicate) out_.Line(vt + " " + n + "_outcome;");
        for (uint32_t i = 0; i < w.capacity; ++i) {
          out_.Line(vt + " " + n + "_m" + std::to_string(i) + ";");
        }
      } else {
        out_.Line(Bits(kStateWidth) + " " + n + "_q;");
        out_.Line(Bits(kIndexWidth) + " " + n + "_count;");
      }
      for (AggFunc f : w.aggregates) {
        out_.Line(vt + " " + n + "_aggr_" + AggFuncName(f) + ";");
      }
    }
    for (const MachinePlan& m : p_.machines) {
      out_.Line("bit<1> " + M(m) + "_emit;");
      out_.Line(Bits(kReturnWidth) + " " + M(m) + "_return_value;");
    }
    out_.Close(";");
  }

  // ------------------------------------------------------------- control

  void EmitControl() {
    out_.Open("control " + control_name(o_) +
              "(inout P4CEP_HEADERS_T hdr,\n        inout " + Meta() +
              " cep,\n        inout standard_metadata_t standard_metadata)");
    EmitRegisters();
    out_.Line();
    out_.Open("action do_transition(" + Bits(kStateWidth) +
              " next_state, bit<1> is_accepting)");
    out_.Line("cep.m_qn = next_state;");
    out_.Line("cep.m_accepting = is_accepting;");
    out_.Close();
    out_.Open("action skip_till_next_match()");
    out_.Line("cep.m_qn = cep.m_q;");
    out_.Line("cep.m_accepting = 1w0;");
    out_.Close();
    out_.Open("action strict_reset()");
    out_.Line("cep.m_qn = " + Lit(kStateWidth, 0) + ";");
    out_.Line("cep.m_accepting = 1w0;");
    out_.Close();
    for (const MachinePlan& m : p_.machines) {
      out_.Line();
      out_.Open("table " + transition_table_name(m));
      out_.Open("key =");
      out_.Line("cep.m_q : exact;");
      out_.Line("cep.m_x : exact;");
      out_.Close();
      out_.Open("actions =");
      out_.Line("do_transition;");
      out_.Line("skip_till_next_match;");
      out_.Line("strict_reset;");
      out_.Close();
      out_.Line(std::string("default_action = ") +
                DefaultAction(m.machine.strategy) + "();");
      out_.Line("size = " +
                std::to_string(std::max<size_t>(
                    64, std::bit_ceil(m.machine.rows.size() + 1))) +
                ";");
      out_.Close();
    }
    out_.Line();
    out_.Open("apply");
    out_.Line("cep.resubmit = 1w0;");
    out_.Line("// Global state is only touched inside this critical section.");
    out_.Open("@atomic");
    EmitWindowSection();
    EmitPredicateSection();
    EmitOutcomeSection();
    EmitMachineSection();
    out_.Close();
    out_.Open("if (cep.resubmit == 1w1)");
    out_.Line("resubmit_preserving_field_list(0);");
    out_.Close();
    out_.Close();
    out_.Close();
  }

  void EmitRegisters() {
    for (const WindowPlan& w : p_.windows) {
      std::string n = W(w);
      std::string vt = Bits(w.width);
      if (w.is_ring()) {
        out_.Line("register<" + vt + ">(" + std::to_string(w.capacity) + ") " +
                  n + "_values;");
        out_.Line("register<" + Bits(kIndexWidth) + ">(1) " + n + "_head;");
        out_.Line("register<" + Bits(kIndexWidth) + ">(1) " + n + "_fill;");
      } else {
        out_.Line("register<" + Bits(kIndexWidth) + ">(1) " + n + "_count;");
        for (AggFunc f : w.aggregates) {
          out_.Line("register<" + vt + ">(1) " + n + "_" + AggFuncName(f) + ";");
        }
      }
    }
    for (const MachinePlan& m : p_.machines) {
      out_.Line("register<" + Bits(kStateWidth) + ">(1) " + M(m) + "_state;");
    }
  }

  static const char* DefaultAction(Strategy s) {
    return s == Strategy::kStrict ? "strict_reset" : "skip_till_next_match";
  }

  // Field value at the window's slot width.
  std::string FieldAt(uint32_t field, int width) const {
    const ProgramField& f = p_.fields[field];
    std::string ref = "hdr." + f.name;
    if (f.width == width) return ref;
    return "(" + Bits(width) + ")" + ref;
  }

  void EmitWindowSection() {
    out_.Line("// 1. window operations");
    for (const WindowPlan& w : p_.windows) {
      if (w.kind == PlanKind::kValue) {
        EmitInsert(w, FieldAt(w.source_field, w.width));
        EmitUnrolledAggregation(w);
      } else if (w.kind == PlanKind::kPredicate) {
        std::string n = W(w);
        out_.Line("// " + n + ": aggregate before this packet's outcome");
        out_.Line(n + "_fill.read(cep." + n + "_fill, " + Lit(kIndexWidth, 0) +
                  ");");
        EmitUnrolledAggregation(w);
      } else {
        EmitRunning(w);
      }
    }
  }

  void EmitInsert(const WindowPlan& w, const std::string& value) {
    std::string n = W(w);
    std::string head = "cep." + n + "_head";
    std::string fill = "cep." + n + "_fill";
    out_.Line("// " + n + ": insert at head, wrap at " +
              std::to_string(w.capacity));
    out_.Line(n + "_head.read(" + head + ", " + Lit(kIndexWidth, 0) + ");");
    out_.Line(n + "_values.write(" + head + ", " + value + ");");
    out_.Open("if (" + head + " == " + Lit(kIndexWidth, w.capacity - 1) + ")");
    out_.Line(head + " = " + Lit(kIndexWidth, 0) + ";");
    out_.Close();
    out_.Open("else");
    out_.Line(head + " = " + head + " + " + Lit(kIndexWidth, 1) + ";");
    out_.Close();
    out_.Line(n + "_head.write(" + Lit(kIndexWidth, 0) + ", " + head + ");");
    out_.Line(n + "_fill.read(" + fill + ", " + Lit(kIndexWidth, 0) + ");");
    out_.Open("if (" + fill + " < " + Lit(kIndexWidth, w.capacity) + ")");
    out_.Line(fill + " = " + fill + " + " + Lit(kIndexWidth, 1) + ";");
    out_.Close();
    out_.Line(n + "_fill.write(" + Lit(kIndexWidth, 0) + ", " + fill + ");");
  }

  void EmitUnrolledAggregation(const WindowPlan& w) {
    std::string n = W(w);
    std::string c = "cep." + n;
    uint64_t all_ones = MaskAll(w.width);
    out_.Line("// " + n + ": unrolled aggregation, guarded by the fill count");
    out_.Line(c + "_iter = " + Lit(kIndexWidth, 0) + ";");
    bool sum = Has(w, AggFunc::kSum) || Has(w, AggFunc::kCount) ||
               Has(w, AggFunc::kAvg);
    for (AggFunc f : w.aggregates) {
      uint64_t init = f == AggFunc::kMin ? all_ones : 0;
      out_.Line(c + "_aggr_" + AggFuncName(f) + " = " + Lit(w.width, init) + ";");
    }
    std::string acc = Has(w, AggFunc::kSum)     ? c + "_aggr_sum"
                      : Has(w, AggFunc::kCount) ? c + "_aggr_count"
                                                : c + "_aggr_avg";
    for (uint32_t i = 0; i < w.capacity; ++i) {
      std::string slot = c + "_m" + std::to_string(i);
      out_.Open("if (" + c + "_iter < " + c + "_fill)");
      out_.Line(n + "_values.read(" + slot + ", " + Lit(kIndexWidth, i) + ");");
      if (sum) out_.Line(acc + " = " + acc + " + " + slot + ";");
      if (Has(w, AggFunc::kMin)) {
        out_.Open("if (" + slot + " < " + c + "_aggr_min)");
        out_.Line(c + "_aggr_min = " + slot + ";");
        out_.Close();
      }
      if (Has(w, AggFunc::kMax)) {
        out_.Open("if (" + slot + " > " + c + "_aggr_max)");
        out_.Line(c + "_aggr_max = " + slot + ";");
        out_.Close();
      }
      out_.Close();
      out_.Line(c + "_iter = " + c + "_iter + " + Lit(kIndexWidth, 1) + ";");
    }
    if (sum) {
      for (AggFunc f : {AggFunc::kSum, AggFunc::kCount}) {
        std::string dst = c + "_aggr_" + AggFuncName(f);
        if (Has(w, f) && dst != acc) out_.Line(dst + " = " + acc + ";");
      }
      if (Has(w, AggFunc::kAvg)) {
        int shift = std::countr_zero(w.capacity);
        std::string dst = c + "_aggr_avg";
        if (dst != acc) {
          out_.Line(dst + " = " + acc + " >> " + std::to_string(shift) + ";");
        } else {
          out_.Line(dst + " = " + dst + " >> " + std::to_string(shift) + ";");
        }
      }
    }
  }

  void EmitRunning(const WindowPlan& w) {
    std::string n = W(w);
    std::string c = "cep." + n;
    std::string owner = M(p_.machines[w.owner_machine]);
    std::string v = FieldAt(w.source_field, w.width);
    out_.Line("// " + n + ": running aggregate, restarted while " + owner +
              " is in its initial state");
    out_.Line(owner + "_state.read(" + c + "_q, " + Lit(kIndexWidth, 0) + ");");
    out_.Line(n + "_count.read(" + c + "_count, " + Lit(kIndexWidth, 0) + ");");
    for (AggFunc f : w.aggregates) {
      out_.Line(n + "_" + AggFuncName(f) + ".read(" + c + "_aggr_" +
                AggFuncName(f) + ", " + Lit(kIndexWidth, 0) + ");");
    }
    StateId initial = p_.machines[w.owner_machine].machine.initial;
    out_.Open("if (" + c + "_q == " + Lit(kStateWidth, initial) + " || " + c +
              "_count == " + Lit(kIndexWidth, 0) + ")");
    for (AggFunc f : w.aggregates) {
      out_.Line(c + "_aggr_" + AggFuncName(f) + " = " + v + ";");
    }
    out_.Line(c + "_count = " + Lit(kIndexWidth, 1) + ";");
    out_.Close();
    out_.Open("else");
    for (AggFunc f : w.aggregates) {
      std::string a = c + "_aggr_" + AggFuncName(f);
      if (f == AggFunc::kSum) {
        out_.Line(a + " = " + a + " + " + v + ";");
      } else if (f == AggFunc::kMin) {
        out_.Open("if (" + v + " < " + a + ")");
        out_.Line(a + " = " + v + ";");
        out_.Close();
      } else if (f == AggFunc::kMax) {
        out_.Open("if (" + v + " > " + a + ")");
        out_.Line(a + " = " + v + ";");
        out_.Close();
      }
    }
    out_.Line(c + "_count = " + c + "_count + " + Lit(kIndexWidth, 1) + ";");
    out_.Close();
    out_.Line(n + "_count.write(" + Lit(kIndexWidth, 0) + ", " + c + "_count);");
    for (AggFunc f : w.aggregates) {
      out_.Line(n + "_" + AggFuncName(f) + ".write(" + Lit(kIndexWidth, 0) +
                ", " + c + "_aggr_" + AggFuncName(f) + ");");
    }
  }

  static uint64_t MaskAll(int width) {
    return width >= 64 ? ~uint64_t{0} : (uint64_t{1} << width) - 1;
  }

  struct Expr {
    std::string text;
    int width;  // 0 for constants
    uint64_t constant = 0;
  };

  Expr Operand_(const Operand& op) const {
    switch (op.kind) {
      case Operand::Kind::kConst:
        return {"", 0, op.constant};
      case Operand::Kind::kField:
        return {"hdr." + p_.fields[op.field].name, p_.fields[op.field].width};
      case Operand::Kind::kAggregate: {
        const WindowPlan& w = p_.windows[op.plan];
        return {"cep." + W(w) + "_aggr_" + AggFuncName(op.func), w.width};
      }
    }
    return {};
  }

  std::string Cast(const Expr& e, int width) const {
    if (e.width == 0) return Lit(width, e.constant);
    if (e.width == width) return e.text;
    return "(" + Bits(width) + ")" + e.text;
  }

  // avg operands are undefined until their window is full.
  std::string Guard(const Operand& op) const {
    if (op.kind != Operand::Kind::kAggregate || op.func != AggFunc::kAvg) {
      return {};
    }
    const WindowPlan& w = p_.windows[op.plan];
    return "cep." + W(w) + "_fill == " + Lit(kIndexWidth, w.capacity);
  }

  std::string Condition(const Predicate& pr) const {
    Expr l = Operand_(pr.lhs);
    Expr r = Operand_(pr.rhs);
    int width = std::max({l.width, r.width, l.width == 0 ? BitsNeeded(l.constant) : 1,
                          r.width == 0 ? BitsNeeded(r.constant) : 1});
    std::string cond = Cast(l, width) + " " + CmpOpSymbol(pr.cmp) + " " +
                       Cast(r, width);
    std::vector<std::string> guards;
    for (const Operand* op : {&pr.lhs, &pr.rhs}) {
      if (std::string g = Guard(*op); !g.empty()) guards.push_back(g);
    }
    for (const std::string& g : guards) cond = g + " && " + cond;
    return cond;
  }

  void EmitPredicateSection() {
    out_.Line("// 2. predicates; the lowest true id becomes the symbol");
    out_.Line("cep.m_x = " + NoMatch() + ";");
    for (size_t i = p_.predicates.size(); i-- > 0;) {
      out_.Line("// x" + std::to_string(i) + ": " +
                describe_predicate(p_, p_.predicates[i]));
      out_.Open("if (" + Condition(p_.predicates[i]) + ")");
      out_.Line("cep.m_x = " + Lit(kSymbolWidth, i) + ";");
      out_.Close();
    }
  }

  void EmitOutcomeSection() {
    bool any = std::any_of(p_.windows.begin(), p_.windows.end(),
                           [](const WindowPlan& w) {
                             return w.kind == PlanKind::kPredicate;
                           });
    if (!any) return;
    out_.Line("// 3. predicate outcome windows");
    for (const WindowPlan& w : p_.windows) {
      if (w.kind != PlanKind::kPredicate) continue;
      std::string o = "cep." + W(w) + "_outcome";
      out_.Line("// " + W(w) + ": " + describe_predicate(p_, w.predicate));
      out_.Open("if (" + Condition(w.predicate) + ")");
      out_.Line(o + " = " + Lit(w.width, 1) + ";");
      out_.Close();
      out_.Open("else");
      out_.Line(o + " = " + Lit(w.width, 0) + ";");
      out_.Close();
      EmitInsert(w, o);
    }
  }

  void EmitMachineSection() {
    out_.Line("// 4. state machines in declaration order");
    for (const MachinePlan& m : p_.machines) {
      std::string n = M(m);
      out_.Line("// " + n + " (" + StrategyName(m.machine.strategy) + ")");
      out_.Line("cep." + n + "_emit = 1w0;");
      out_.Line(n + "_state.read(cep.m_q, " + Lit(kIndexWidth, 0) + ");");
      out_.Line(transition_table_name(m) + ".apply();");
      out_.Open("if (cep.m_accepting == 1w1)");
      out_.Line("cep." + n + "_return_value = " +
                Cast(Operand_(m.return_value), kReturnWidth) + ";");
      out_.Line("cep." + n + "_emit = 1w1;");
      out_.Line("cep.resubmit = 1w1;");
      out_.Line("cep.m_qn = " + Lit(kStateWidth, m.machine.initial) + ";");
      out_.Close();
      out_.Line(n + "_state.write(" + Lit(kIndexWidth, 0) + ", cep.m_qn);");
    }
  }

  const CompiledProgram& p_;
  const CodegenOptions& o_;
  std::string prefix_;
  Out out_;
};

}  // namespace

std::string sanitize_identifier(std::string_view name) {
  std::string out;
  for (char c : name) {
    out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
  }
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0]))) {
    out.insert(out.begin(), '_');
  }
  return out;
}

std::string transition_table_name(const MachinePlan& machine) {
  return sanitize_identifier(machine.name) + "_transitions";
}

std::string control_name(const CodegenOptions& options) {
  return "p4cep_" + sanitize_identifier(options.name) + "_ingress";
}

std::string generate_p4(const CompiledProgram& program,
                        const CodegenOptions& options,
                        std::vector<std::string>* warnings) {
  if (program.windows.empty() && program.machines.empty()) return {};
  uint64_t slots = 0;
  for (const WindowPlan& w : program.windows) slots += w.capacity;
  if (slots > options.slot_budget && warnings != nullptr) {
    warnings->push_back("program unrolls " + std::to_string(slots) +
                        " window slots, above the budget of " +
                        std::to_string(options.slot_budget) +
                        "; targets with code-size limits may reject it");
  }
  return Generator(program, options).Run();
}

std::string generate_table_entries(const CompiledProgram& program) {
  std::string out;
  for (const MachinePlan& m : program.machines) {
    std::string table = transition_table_name(m);
    for (const TransitionRow& r : m.machine.rows) {
      out += "table_add " + table + " do_transition " + std::to_string(r.q) +
             " " + std::to_string(r.x) + " => " + std::to_string(r.next) + " " +
             (r.is_accepting ? "1" : "0") + "\n";
    }
    out += "table_set_default " + table + " " +
           (m.machine.strategy == Strategy::kStrict ? "strict_reset"
                                                    : "skip_till_next_match") +
           "\n";
  }
  return out;
}

std::string generate_manifest(const CompiledProgram& program,
                              const CodegenOptions& options) {
  if (program.windows.empty() && program.machines.empty()) return {};
  std::string out;
  out += "control " + control_name(options) + "\n";
  out += "metadata p4cep_" + sanitize_identifier(options.name) + "_metadata_t\n";
  for (const WindowPlan& w : program.windows) {
    std::string n = sanitize_identifier(w.name);
    std::string key = "window." + w.name + ".";
    if (w.is_ring()) {
      out += key + "values " + n + "_values\n";
      out += key + "head " + n + "_head\n";
      out += key + "fill " + n + "_fill\n";
    } else {
      out += key + "count " + n + "_count\n";
      for (AggFunc f : w.aggregates) {
        out += key + AggFuncName(f) + " " + n + "_" + AggFuncName(f) + "\n";
      }
    }
  }
  for (size_t i = 0; i < program.predicates.size(); ++i) {
    out += "predicate." + std::to_string(i) + " " +
           describe_predicate(program, program.predicates[i]) + "\n";
  }
  for (const MachinePlan& m : program.machines) {
    std::string n = sanitize_identifier(m.name);
    out += "machine." + m.name + ".state " + n + "_state\n";
    out += "machine." + m.name + ".table " + transition_table_name(m) + "\n";
    out += "machine." + m.name + ".emit " + n + "_emit\n";
    out += "machine." + m.name + ".return_value " + n + "_return_value\n";
  }
  return out;
}

GeneratedArtifacts generate_artifacts(const CompiledProgram& program,
                                      const CodegenOptions& options) {
  GeneratedArtifacts a;
  a.p4_source = generate_p4(program, options, &a.warnings);
  a.table_entries = generate_table_entries(program);
  a.manifest = generate_manifest(program, options);
  return a;
}

TableEntries parse_table_entries(std::string_view text) {
  TableEntries out;
  int line_no = 0;
  while (!text.empty()) {
    size_t nl = text.find('\n');
    std::string line(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (size_t hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream in(line);
    std::vector<std::string> t;
    for (std::string tok; in >> tok;) t.push_back(tok);
    if (t.empty()) continue;
    auto fail = [&](const std::string& what) {
      throw Error(ErrorKind::kInvalidUpdate, what, {line_no, 1});
    };
    auto number = [&](const std::string& s) -> uint32_t {
      if (s.empty() || s.size() > 9 ||
          !std::all_of(s.begin(), s.end(), ::isdigit)) {
        fail("expected a decimal number, got '" + s + "'");
      }
      return static_cast<uint32_t>(std::stoul(s));
    };
    if (t[0] == "table_add") {
      if (t.size() != 8 || t[2] != "do_transition" || t[5] != "=>") {
        fail("expected 'table_add <table> do_transition <q> <x> => <next> "
             "<is_accepting>'");
      }
      uint32_t acc = number(t[7]);
      if (acc > 1) fail("is_accepting must be 0 or 1");
      out.tables[t[1]].rows.push_back(
          {number(t[3]), number(t[4]), number(t[6]), acc == 1});
    } else if (t[0] == "table_set_default") {
      if (t.size() != 3) fail("expected 'table_set_default <table> <action>'");
      Strategy s;
      if (t[2] == "skip_till_next_match") {
        s = Strategy::kSkipTillNextMatch;
      } else if (t[2] == "strict_reset") {
        s = Strategy::kStrict;
      } else {
        fail("unknown default action '" + t[2] + "'");
      }
      out.tables[t[1]].default_strategy = s;
    } else {
      fail("unknown command '" + t[0] + "'");
    }
  }
  return out;
}

}  // namespace p4cep
