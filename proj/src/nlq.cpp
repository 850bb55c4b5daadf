#include "vgqa/nlq.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <regex>

#include "vgqa/errors.hpp"
#include "vgqa/graph.hpp"

namespace vgqa {

namespace {

constexpr const char* kNameCapture = "([a-zA-Z]+)";
constexpr const char* kAlnumCapture = "([a-zA-Z0-9]+)";

Template make_template(int id, std::string pattern,
                       std::vector<Step> computations,
                       std::vector<std::string> arg_ops, Answer::Tag tag) {
  Template t;
  t.id = id;
  t.pattern = std::move(pattern);
  t.computations = std::move(computations);
  t.arg_ops = std::move(arg_ops);
  t.answer_tag = tag;
  return t;
}

}  // namespace

const std::vector<Template>& question_templates() {
  static const std::vector<Template> templates = [] {
    using Tag = Answer::Tag;
    std::vector<Template> ts;
    ts.push_back(make_template(
        1, "How many stations are between ([a-zA-Z]+) and ([a-zA-Z]+)?",
        {{0, "countNodesBetween", {}}, {0, "shortestPath", {}}},
        {"station", "station"}, Tag::count));
    ts.push_back(make_template(
        2, "How many other stations are two stops or closer to ([a-zA-Z]+)?",
        {{0, "withinHops", {"2"}}}, {"station"}, Tag::count));
    ts.push_back(make_template(
        3, "How many distinct routes are there between ([a-zA-Z]+) and ([a-zA-Z]+)?",
        {{0, "paths", {}}}, {"station", "station"}, Tag::count));
    ts.push_back(make_template(4, "Is ([a-zA-Z]+) part of a cycle?",
                               {{0, "cycle", {}}}, {"station"}, Tag::boolean));
    ts.push_back(make_template(
        5, "Are ([a-zA-Z]+) and ([a-zA-Z]+) adjacent?", {{0, "adjacent", {}}},
        {"station", "station"}, Tag::boolean));
    ts.push_back(make_template(
        6, "Which station is adjacent to ([a-zA-Z]+) and ([a-zA-Z]+)?",
        {{0, "adjacentTo", {}}}, {"station", "station"}, Tag::names));
    ts.push_back(make_template(
        7, "Are ([a-zA-Z]+) and ([a-zA-Z]+) connected by the same station?",
        {{0, "commonStation", {}}}, {"station", "station"}, Tag::boolean));
    ts.push_back(make_template(8, "Is there a station called ([a-zA-Z0-9]+)?",
                               {{0, "exist", {}}}, {"station"}, Tag::boolean));
    ts.push_back(make_template(9, "Which lines is ([a-zA-Z]+) on?",
                               {{0, "linesOnNames", {}}}, {"station"},
                               Tag::names));
    ts.push_back(make_template(10, "How many lines is ([a-zA-Z]+) on?",
                               {{0, "linesOnCount", {}}}, {"station"},
                               Tag::count));
    ts.push_back(make_template(
        11, "Are ([a-zA-Z]+) and ([a-zA-Z]+) on the same line?",
        {{0, "sameLine", {}}}, {"station", "station"}, Tag::boolean));
    ts.push_back(make_template(12, "Which stations does ([a-zA-Z]+) pass through?",
                               {{0, "stations", {}}}, {"line"}, Tag::names));
    return ts;
  }();
  return templates;
}

const Template& template_by_id(int id) {
  for (const auto& t : question_templates()) {
    if (t.id == id) return t;
  }
  throw DataError("unknown template id: " + std::to_string(id));
}

std::string Template::surface() const {
  std::string s = pattern;
  for (const char* capture : {kNameCapture, kAlnumCapture}) {
    for (size_t at = s.find(capture); at != std::string::npos;
         at = s.find(capture, at)) {
      s.replace(at, std::string(capture).size(), "{}");
      at += 2;
    }
  }
  return s;
}

FunctionalProgram instantiate_program(const Template& t,
                                      const std::vector<std::string>& bindings) {
  if (int(bindings.size()) != t.arity()) {
    throw DataError("template " + std::to_string(t.id) + " takes " +
                    std::to_string(t.arity()) + " binding(s), got " +
                    std::to_string(bindings.size()));
  }
  std::vector<Step> atoms;
  int terminal = int(t.computations.size()) + 1;
  atoms.push_back(Step{terminal, "end", {}});
  int index = terminal - 1;
  for (const auto& c : t.computations) {
    atoms.push_back(Step{index--, c.op, c.args});
  }
  for (size_t i = 0; i < bindings.size(); ++i) {
    atoms.push_back(Step{0, t.arg_ops[i], {normalize_name(bindings[i])}});
  }
  auto p = FunctionalProgram::from_atoms(std::move(atoms));
  if (!p) {
    throw DataError("template " + std::to_string(t.id) +
                    " produced an invalid program");
  }
  return *p;
}

std::string instantiate_template(int id,
                                 const std::vector<std::string>& bindings) {
  const Template& t = template_by_id(id);
  if (int(bindings.size()) != t.arity()) {
    throw DataError("template " + std::to_string(id) + " takes " +
                    std::to_string(t.arity()) + " binding(s), got " +
                    std::to_string(bindings.size()));
  }
  std::string text = t.surface();
  for (const auto& b : bindings) {
    size_t hole = text.find("{}");
    text.replace(hole, 2, b);
  }
  return text;
}

namespace {

// Table 1 patterns end in a literal question mark; escape it so the regex
// engine does not read it as a quantifier.
std::regex compile_pattern(const std::string& pattern) {
  std::string fixed = pattern;
  if (!fixed.empty() && fixed.back() == '?') {
    fixed.replace(fixed.size() - 1, 1, "\\?");
  }
  return std::regex(fixed);
}

}  // namespace

const Template* match_template(const std::string& q,
                               std::vector<std::string>* bindings) {
  static const std::vector<std::regex> compiled = [] {
    std::vector<std::regex> rs;
    for (const auto& t : question_templates()) rs.push_back(compile_pattern(t.pattern));
    return rs;
  }();
  const auto& templates = question_templates();
  for (size_t i = 0; i < templates.size(); ++i) {
    std::smatch m;
    if (std::regex_match(q, m, compiled[i])) {
      if (bindings) {
        bindings->clear();
        for (size_t c = 1; c < m.size(); ++c) bindings->push_back(m[c].str());
      }
      return &templates[i];
    }
  }
  return nullptr;
}

std::optional<FunctionalProgram> parse_question_regex(const std::string& q) {
  std::vector<std::string> bindings;
  const Template* t = match_template(q, &bindings);
  if (!t) return std::nullopt;
  return instantiate_program(*t, bindings);
}

const std::vector<PromptExample>& default_example_bank() {
  static const std::vector<PromptExample> bank = [] {
    std::vector<PromptExample> b;
    auto add = [&b](int id, std::string q, std::vector<std::string> names) {
      const Template& t = template_by_id(id);
      std::string answer;
      int terminal = int(t.computations.size()) + 1;
      answer += "end(" + std::to_string(terminal) + ").";
      int index = terminal - 1;
      for (const auto& c : t.computations) {
        answer += to_atom_text(Step{index--, c.op, c.args}) + ".";
      }
      for (size_t i = 0; i < names.size(); ++i) {
        answer += t.arg_ops[i] + "(0,\"" + names[i] + "\").";
      }
      b.push_back(PromptExample{id, std::move(q), std::move(answer)});
    };

    add(1, "How many stations are between Inzersdorf and Mainstation?",
        {"Inzersdorf", "Mainstation"});
    add(1, "What is the amount of stations between Station A and Station B?",
        {"Station A", "Station B"});
    add(1, "Count the stations separating Floridsdorf and Leopoldau.",
        {"Floridsdorf", "Leopoldau"});

    add(2, "How many other stations are two stops or closer to Karlsplatz?",
        {"Karlsplatz"});
    add(2, "How many stations can be reached from Praterstern in two stops or fewer?",
        {"Praterstern"});
    add(2, "Within two stops of Westbahnhof, how many other stations are there?",
        {"Westbahnhof"});

    add(3, "How many distinct routes are there between Hietzing and Schottentor?",
        {"Hietzing", "Schottentor"});
    add(3, "In how many different ways can one travel from Ottakring to Simmering?",
        {"Ottakring", "Simmering"});
    add(3, "What is the number of separate paths connecting Spittelau and Taubstummengasse?",
        {"Spittelau", "Taubstummengasse"});

    add(4, "Is Stephansplatz part of a cycle?", {"Stephansplatz"});
    add(4, "Does Volkstheater lie on a loop of the network?", {"Volkstheater"});
    add(4, "Can you start at Schwedenplatz and come back around to it?",
        {"Schwedenplatz"});

    add(5, "Are Museumsquartier and Karlsplatz adjacent?",
        {"Museumsquartier", "Karlsplatz"});
    add(5, "Is there a direct connection between Rathaus and Volkstheater?",
        {"Rathaus", "Volkstheater"});
    add(5, "Do Laaerberg and Reumannplatz share a link?",
        {"Laaerberg", "Reumannplatz"});

    add(6, "Which station is adjacent to Herrengasse and Stephansplatz?",
        {"Herrengasse", "Stephansplatz"});
    add(6, "Name the station that neighbors both Stadtpark and Landstrasse.",
        {"Stadtpark", "Landstrasse"});
    add(6, "What station connects directly to Rossauer and Schottenring?",
        {"Rossauer", "Schottenring"});

    add(7, "Are Keplerplatz and Hauptbahnhof connected by the same station?",
        {"Keplerplatz", "Hauptbahnhof"});
    add(7, "Do Zieglergasse and Neubaugasse share a common neighboring station?",
        {"Zieglergasse", "Neubaugasse"});
    add(7, "Is there one station linking both Gumpendorfer and Pilgramgasse?",
        {"Gumpendorfer", "Pilgramgasse"});

    add(8, "Is there a station called Aspernstrasse?", {"Aspernstrasse"});
    add(8, "Does the network contain a station named Donauinsel?",
        {"Donauinsel"});
    add(8, "Can I find a station called Hausfeldstrasse on this map?",
        {"Hausfeldstrasse"});

    add(9, "Which lines is Praterstern on?", {"Praterstern"});
    add(9, "List the lines serving Westbahnhof.", {"Westbahnhof"});
    add(9, "What lines pass through Landstrasse?", {"Landstrasse"});

    add(10, "How many lines is Karlsplatz on?", {"Karlsplatz"});
    add(10, "On how many lines does Stephansplatz lie?", {"Stephansplatz"});
    add(10, "What is the number of lines serving Spittelau?", {"Spittelau"});

    add(11, "Are Ottakring and Simmering on the same line?",
        {"Ottakring", "Simmering"});
    add(11, "Do Hietzing and Schottentor share a line?",
        {"Hietzing", "Schottentor"});
    add(11, "Can one travel from Alaudagasse to Oberlaa without changing lines?",
        {"Alaudagasse", "Oberlaa"});

    add(12, "Which stations does redline pass through?", {"redline"});
    add(12, "List every station on the blueline.", {"blueline"});
    add(12, "What stations lie along greenline?", {"greenline"});

    return b;
  }();
  return bank;
}

std::string build_llm_prompt(const std::string& q,
                             const std::vector<PromptExample>& examples) {
  std::map<int, int> per_template;
  for (const auto& e : examples) per_template[e.template_id]++;
  if (examples.size() != 36) {
    throw DataError("example bank must hold 36 examples, got " +
                    std::to_string(examples.size()));
  }
  for (const auto& t : question_templates()) {
    int n = per_template[t.id];
    if (n < 1 || n > 3) {
      throw DataError("template " + std::to_string(t.id) +
                      " needs 1..3 examples, has " + std::to_string(n));
    }
  }

  std::string prompt = kLlmPrePrompt;
  prompt += "\n\nI now provide you with some examples on how to parse Questions:\n";
  for (const auto& e : examples) {
    prompt += "\nQ: \"" + e.question + "\"\nA: " + e.answer + "\n";
  }
  prompt += "\nNow provide the output for the following question:\n" + q + "\n";
  return prompt;
}

namespace {

std::string strip_all_whitespace(const std::string& s) {
  std::string out;
  for (unsigned char c : s) {
    if (!std::isspace(c)) out.push_back(char(c));
  }
  return out;
}

// Trims whitespace and any quoting a model may imitate from the prompt:
// ASCII quotes/backticks and the UTF-8 curly variants.
std::string strip_quoting(std::string s) {
  static const std::vector<std::string> marks = {
      "\"", "'", "`", "\xe2\x80\x9c", "\xe2\x80\x9d", "\xe2\x80\x98",
      "\xe2\x80\x99"};
  auto trim = [](std::string& t) {
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
  };
  trim(s);
  bool stripped = true;
  while (stripped) {
    stripped = false;
    for (const auto& m : marks) {
      if (s.size() >= m.size() && s.compare(0, m.size(), m) == 0) {
        s.erase(0, m.size());
        stripped = true;
      }
      if (s.size() >= m.size() &&
          s.compare(s.size() - m.size(), m.size(), m) == 0) {
        s.erase(s.size() - m.size());
        stripped = true;
      }
    }
  }
  trim(s);
  return s;
}

std::vector<std::string> split_args(const std::string& inner) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : inner) {
    if (c == ',') {
      parts.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  parts.push_back(current);
  return parts;
}

}  // namespace

std::optional<FunctionalProgram> extract_program_from_response(
    const std::string& response) {
  static const std::regex atom_re("([A-Za-z]+)\\s*\\(([^()]*)\\)");
  std::vector<Step> atoms;
  for (auto it = std::sregex_iterator(response.begin(), response.end(), atom_re);
       it != std::sregex_iterator(); ++it) {
    const OpInfo* op = find_op((*it)[1].str());
    if (!op) continue;
    std::vector<std::string> parts = split_args((*it)[2].str());
    if (int(parts.size()) != 1 + op->extra_args) continue;

    std::string index_text = strip_quoting(parts[0]);
    if (index_text.empty() || index_text.size() > 6 ||
        !std::all_of(index_text.begin(), index_text.end(),
                     [](unsigned char c) { return std::isdigit(c); })) {
      continue;
    }
    Step step;
    step.op = op->name;
    step.index = std::stoi(index_text);
    bool ok = true;
    for (size_t i = 1; i < parts.size(); ++i) {
      std::string arg = strip_quoting(parts[i]);
      if (arg.empty()) {
        ok = false;
        break;
      }
      if (!op->numeric_args) {
        try {
          arg = normalize_name(arg);
        } catch (const DataError&) {
          ok = false;
          break;
        }
      }
      step.args.push_back(std::move(arg));
    }
    if (ok) atoms.push_back(std::move(step));
  }
  if (atoms.empty()) return std::nullopt;
  return FunctionalProgram::from_atoms(std::move(atoms));
}

const char* response_category_name(ResponseCategory c) {
  switch (c) {
    case ResponseCategory::full_match: return "full_match";
    case ResponseCategory::contains_solution: return "contains_solution";
    case ResponseCategory::task_missed: return "task_missed";
    case ResponseCategory::no_answer: return "no_answer";
  }
  throw std::logic_error("unreachable");
}

ResponseVerdict classify_response(const std::string& response,
                                  const FunctionalProgram& expected) {
  ResponseVerdict v;
  std::string stripped = strip_all_whitespace(response);
  if (stripped.empty()) {
    v.category = ResponseCategory::no_answer;
    return v;
  }
  if (stripped == strip_all_whitespace(to_atom_text(expected))) {
    v.category = ResponseCategory::full_match;
    v.extracted = expected;
    return v;
  }
  auto extracted = extract_program_from_response(response);
  if (extracted && *extracted == expected) {
    v.category = ResponseCategory::contains_solution;
    v.extracted = std::move(extracted);
    return v;
  }
  v.category = ResponseCategory::task_missed;
  return v;
}

}  // namespace vgqa
