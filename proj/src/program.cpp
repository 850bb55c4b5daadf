#include "vgqa/program.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

#include "vgqa/errors.hpp"

namespace vgqa {

const std::vector<OpInfo>& op_vocabulary() {
  static const std::vector<OpInfo> ops = {
      {"end", OpKind::terminal, 0, false},
      {"station", OpKind::argument, 1, false},
      {"line", OpKind::argument, 1, false},
      {"shortestPath", OpKind::computation, 0, false},
      {"countNodesBetween", OpKind::computation, 0, false},
      {"withinHops", OpKind::computation, 1, true},
      {"paths", OpKind::computation, 0, false},
      {"cycle", OpKind::computation, 0, false},
      {"adjacent", OpKind::computation, 0, false},
      {"adjacentTo", OpKind::computation, 0, false},
      {"commonStation", OpKind::computation, 0, false},
      {"exist", OpKind::computation, 0, false},
      {"linesOnNames", OpKind::computation, 0, false},
      {"linesOnCount", OpKind::computation, 0, false},
      {"sameLine", OpKind::computation, 0, false},
      {"stations", OpKind::computation, 0, false},
  };
  return ops;
}

const OpInfo* find_op(const std::string& name) {
  for (const auto& op : op_vocabulary()) {
    if (name == op.name) return &op;
  }
  return nullptr;
}

namespace {

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c);
  });
}

std::vector<Step> sorted_atoms(const std::vector<Step>& steps) {
  std::vector<Step> v = steps;
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

int FunctionalProgram::terminal_index() const {
  for (const auto& s : steps) {
    if (s.op == "end") return s.index;
  }
  throw DataError("program has no terminal step");
}

const Step& FunctionalProgram::step_at(int index) const {
  for (const auto& s : steps) {
    if (s.index == index && s.op != "station" && s.op != "line") return s;
  }
  throw DataError("program has no step at index " + std::to_string(index));
}

std::vector<Step> FunctionalProgram::argument_steps() const {
  std::vector<Step> args;
  for (const auto& s : steps) {
    if (s.index == 0 && (s.op == "station" || s.op == "line")) {
      args.push_back(s);
    }
  }
  return args;
}

bool FunctionalProgram::operator==(const FunctionalProgram& other) const {
  return sorted_atoms(steps) == sorted_atoms(other.steps);
}

std::optional<FunctionalProgram> FunctionalProgram::from_atoms(
    std::vector<Step> atoms) {
  // Exact duplicates collapse (atom sets, not sequences).
  std::vector<Step> unique;
  for (auto& a : atoms) {
    if (std::find(unique.begin(), unique.end(), a) == unique.end()) {
      unique.push_back(std::move(a));
    }
  }

  int terminal = -1;
  std::vector<Step> computations;
  std::vector<Step> arguments;
  for (auto& a : unique) {
    const OpInfo* op = find_op(a.op);
    if (!op || int(a.args.size()) != op->extra_args) return std::nullopt;
    if (op->numeric_args) {
      for (const auto& arg : a.args) {
        if (!all_digits(arg)) return std::nullopt;
      }
    }
    switch (op->kind) {
      case OpKind::terminal:
        if (terminal != -1 || a.index < 1) return std::nullopt;
        terminal = a.index;
        break;
      case OpKind::computation:
        if (a.index < 1) return std::nullopt;
        computations.push_back(std::move(a));
        break;
      case OpKind::argument:
        if (a.index != 0 || a.args[0].empty()) return std::nullopt;
        arguments.push_back(std::move(a));
        break;
    }
  }
  if (terminal == -1 || arguments.empty()) return std::nullopt;

  // Contiguity: exactly one computation per index 1..T-1.
  if (int(computations.size()) != terminal - 1) return std::nullopt;
  std::set<int> indices;
  for (const auto& c : computations) {
    if (c.index >= terminal || !indices.insert(c.index).second) {
      return std::nullopt;
    }
  }

  FunctionalProgram p;
  std::sort(computations.begin(), computations.end(),
            [](const Step& a, const Step& b) { return a.index > b.index; });
  p.steps.push_back(Step{terminal, "end", {}});
  for (auto& c : computations) p.steps.push_back(std::move(c));
  for (auto& a : arguments) p.steps.push_back(std::move(a));
  return p;
}

std::string to_atom_text(const Step& s) {
  const OpInfo* op = find_op(s.op);
  std::string text = s.op + "(" + std::to_string(s.index);
  for (const auto& arg : s.args) {
    if (op && op->numeric_args) {
      text += ", " + arg;
    } else {
      text += ",\"" + arg + "\"";
    }
  }
  text += ")";
  return text;
}

std::string to_atom_text(const FunctionalProgram& p, bool compact) {
  std::string text;
  for (const auto& s : p.steps) {
    text += to_atom_text(s);
    text += compact ? "." : ". ";
  }
  if (!compact && !text.empty()) text.pop_back();  // no trailing space
  return text;
}

Answer Answer::yes_no(bool b) {
  Answer a;
  a.tag = Tag::boolean;
  a.bool_value = b;
  return a;
}

Answer Answer::of_count(int n) {
  if (n < 0) throw DataError("negative count answer");
  Answer a;
  a.tag = Tag::count;
  a.count_value = n;
  return a;
}

Answer Answer::of_names(std::vector<std::string> names) {
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  Answer a;
  a.tag = Tag::names;
  a.names_value = std::move(names);
  return a;
}

Answer Answer::of_name(std::string name) {
  Answer a;
  a.tag = Tag::name;
  a.name_value = std::move(name);
  return a;
}

Answer Answer::unknown() { return of_name("unknown"); }

std::string Answer::to_text() const {
  switch (tag) {
    case Tag::boolean:
      return bool_value ? "yes" : "no";
    case Tag::count:
      return std::to_string(count_value);
    case Tag::names: {
      std::string text;
      for (const auto& n : names_value) {
        if (!text.empty()) text += ",";
        text += n;
      }
      return text;
    }
    case Tag::name:
      return name_value;
  }
  throw std::logic_error("unreachable");
}

const char* answer_tag_name(Answer::Tag tag) {
  switch (tag) {
    case Answer::Tag::boolean: return "bool";
    case Answer::Tag::count: return "count";
    case Answer::Tag::names: return "names";
    case Answer::Tag::name: return "name";
  }
  throw std::logic_error("unreachable");
}

}  // namespace vgqa
