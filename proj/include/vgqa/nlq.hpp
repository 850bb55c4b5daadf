#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vgqa/program.hpp"

namespace vgqa {

// One question family: a regex over surface text paired with the program
// skeleton it compiles to. The twelve instances returned by
// question_templates() are the full question grammar.
struct Template {
  int id = 0;                      // 1..12
  std::string pattern;             // regex with one capture per binding
  std::vector<Step> computations;  // top step first; indices filled on use
  std::vector<std::string> arg_ops;  // "station"/"line", one per capture
  Answer::Tag answer_tag = Answer::Tag::name;

  int arity() const { return int(arg_ops.size()); }
  // pattern with each capture group replaced by a {} hole
  std::string surface() const;
};

const std::vector<Template>& question_templates();
const Template& template_by_id(int id);

// Skeleton + normalized bindings -> program. Throws DataError on arity
// mismatch or unusable binding.
FunctionalProgram instantiate_program(const Template& t,
                                      const std::vector<std::string>& bindings);

// Surface text for a template; parse_question_regex inverts it for
// bindings drawn from the capture alphabet.
std::string instantiate_template(int id,
                                 const std::vector<std::string>& bindings);

// First matching template (patterns are mutually exclusive) with captured
// names normalized. Absence signals an out-of-grammar question.
std::optional<FunctionalProgram> parse_question_regex(const std::string& q);

// Which template produced this question text, if any.
const Template* match_template(const std::string& q,
                               std::vector<std::string>* bindings = nullptr);

// --- LLM-backed parsing ------------------------------------------------

struct PromptExample {
  int template_id = 0;
  std::string question;
  std::string answer;  // atom text, shown verbatim in the prompt
};

inline constexpr const char* kLlmPrePrompt =
    "You are now a Question Parser that translates natural language "
    "questions into ASP ground truths about different stations. Output only "
    "the ground truths and nothing else. The stations to be selected from "
    "are arbitrary.";

// 36 entries, three per template: the canonical surface plus two
// paraphrases.
const std::vector<PromptExample>& default_example_bank();

// Pre-prompt, example Q/A blocks, then the question. Deterministic bytes.
// The bank must cover each template at least once, at most three times,
// 36 examples in total.
std::string build_llm_prompt(
    const std::string& q,
    const std::vector<PromptExample>& examples = default_example_bank());

// Scans free text for atoms over the known op vocabulary, ignoring prose,
// and returns a program iff the well-formed atoms assemble into one.
std::optional<FunctionalProgram> extract_program_from_response(
    const std::string& response);

enum class ResponseCategory { full_match, contains_solution, task_missed, no_answer };

struct ResponseVerdict {
  ResponseCategory category = ResponseCategory::no_answer;
  std::optional<FunctionalProgram> extracted;
};

const char* response_category_name(ResponseCategory c);

// Exactly one category per response:
//   no_answer          whitespace-only response
//   full_match         whitespace-stripped response equals the expected
//                      program's canonical text
//   contains_solution  extraction yields a program equal to expected
//   task_missed        anything else
ResponseVerdict classify_response(const std::string& response,
                                  const FunctionalProgram& expected);

}  // namespace vgqa
