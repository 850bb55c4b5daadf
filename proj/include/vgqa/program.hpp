#pragma once

#include <optional>
#include <string>
#include <vector>

namespace vgqa {

enum class OpKind { argument, computation, terminal };

struct OpInfo {
  const char* name;
  OpKind kind;
  int extra_args;     // beyond the leading index
  bool numeric_args;  // extra args are decimal numbers, not names
};

// The atom vocabulary: the twelve question tags plus the argument tags
// station/line and the terminal tag end.
const std::vector<OpInfo>& op_vocabulary();
const OpInfo* find_op(const std::string& name);

// One atom: op(index) or op(index, args...). args excludes the index.
struct Step {
  int index = 0;
  std::string op;
  std::vector<std::string> args;

  friend bool operator==(const Step&, const Step&) = default;
  friend auto operator<=>(const Step&, const Step&) = default;
};

// An executable question: exactly one end(T), one computation step per
// index 1..T-1, and argument atoms at index 0. Step order is canonical:
// terminal and computations by descending index, then arguments in
// binding order. Equality is set equality over atoms.
struct FunctionalProgram {
  std::vector<Step> steps;

  int terminal_index() const;
  const Step& step_at(int index) const;  // computation/terminal lookup
  std::vector<Step> argument_steps() const;

  bool operator==(const FunctionalProgram& other) const;

  // Validates atoms (known ops, arities, contiguous indices, single end,
  // at least one argument) and canonicalizes their order. Absence, not an
  // error: malformed atom sets come from free-form model output.
  static std::optional<FunctionalProgram> from_atoms(std::vector<Step> atoms);
};

std::string to_atom_text(const Step& s);

// Canonical text, e.g.
//   end(3). countNodesBetween(2). shortestPath(1). station(0,"a"). station(0,"b").
// compact=true drops the separating spaces (the layout used in prompts).
std::string to_atom_text(const FunctionalProgram& p, bool compact = false);

struct Answer {
  enum class Tag { boolean, count, names, name };

  Tag tag = Tag::name;
  bool bool_value = false;
  int count_value = 0;
  std::vector<std::string> names_value;  // sorted, duplicate-free
  std::string name_value;

  static Answer yes_no(bool b);
  static Answer of_count(int n);
  static Answer of_names(std::vector<std::string> names);
  static Answer of_name(std::string name);
  // Categorical answer for questions over unknown stations/lines; graded
  // incorrect rather than raised as a fault.
  static Answer unknown();

  // "yes"/"no" | decimal digits | comma-joined sorted names | the name
  std::string to_text() const;

  friend bool operator==(const Answer&, const Answer&) = default;
};

const char* answer_tag_name(Answer::Tag tag);

}  // namespace vgqa
