// On-disk workspaces (a manifest naming `.types`, `.spec` and `.tld`
// files) and the pipeline that turns one typed description into code.

#ifndef TLDFORGE_WORKSPACE_HPP
#define TLDFORGE_WORKSPACE_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tldforge/ast.hpp"
#include "tldforge/codegen.hpp"
#include "tldforge/diagnostics.hpp"
#include "tldforge/modes.hpp"
#include "tldforge/semantics.hpp"
#include "tldforge/spec.hpp"
#include "tldforge/syntax.hpp"
#include "tldforge/transform.hpp"
#include "tldforge/typesys.hpp"

namespace tldf {

// One declaration per line: `types <path>`, `spec <path>`, `tld <path>`,
// `out <dir>`. Paths are relative to the manifest.
struct Manifest {
  struct Entry {
    std::string kind;
    std::string path;
    int line = 0;
  };
  std::vector<Entry> entries;
  std::string out_dir;
};

Parsed<Manifest> parse_manifest(std::string_view text, std::string file = {});

enum class Stage { Typed, Untyped, Normalized, Ordered, Eliminated };

const char* stage_name(Stage s);
std::optional<Stage> parse_stage(std::string_view name);

class Workspace {
 public:
  std::filesystem::path manifest;
  TypeEnv types;
  SpecRegistry specs;  // built-ins followed by user specs
  std::vector<std::string> user_specs;
  std::vector<TypedLogicDescription> tlds;
  std::filesystem::path out_dir;

  const TypedLogicDescription* find_tld(std::string_view name) const;
  const Spec* find_spec(std::string_view name, std::size_t arity) const;

  // Replaces a predicate's description with a stage dump (as written by
  // the pipeline). Untyped stages skip the transformation on later runs.
  Diagnostics load_dump(std::string_view text, std::string file = {});
  const LogicDescription* untyped_override(std::string_view name) const;

 private:
  std::map<std::string, LogicDescription, std::less<>> overrides_;
};

struct LoadResult {
  std::optional<Workspace> workspace;
  Diagnostics diagnostics;
};

// Fails atomically: `workspace` is empty whenever an error was reported.
LoadResult load_workspace(const std::filesystem::path& manifest);

struct PipelineOptions {
  Target target = Target::Prolog;
  CheckLevel level = CheckLevel::PaperCompat;
  bool cuts = false;
  bool split = false;
  bool comments = false;
  // Directionality whose literal order is emitted (0-based).
  std::size_t dir_index = 0;
  std::optional<Stage> emit_stage;
};

struct PredicateReport {
  std::string predicate;
  std::vector<std::vector<Clause>> orders;  // per directionality
  std::vector<RemovedCheck> removed;
  std::vector<DeterminismResult> determinism;
  Program program;  // as emitted
};

struct PipelineResult {
  bool ok = false;
  std::string text;
  std::string report;
  Diagnostics diagnostics;
  std::vector<PredicateReport> predicates;
};

// Runs every description in file order, or only `predicate`.
PipelineResult run_pipeline(const Workspace& ws,
                            const std::optional<std::string>& predicate,
                            const PipelineOptions& opts);

// Untyped description as the pipeline sees it (transformed and simplified,
// or the loaded override).
LogicDescription untyped_description(const Workspace& ws,
                                     const TypedLogicDescription& tld);

// A `.tld` skeleton: one structural case per disjunct, each with a hole.
// Throws Error{"NotStructural"}, Error{"UnknownPredicate"} or
// Error{"UnknownParameter"}.
std::string suggest_skeleton(const Workspace& ws, const std::string& spec_name,
                             const std::string& induction_param);

struct OracleOptions {
  int depth = 2;
  int unfold = 4;
  TransformVariant variant = TransformVariant::Faithful;
};

// Evaluation context holding every description of the workspace under both
// readings, over the types reachable from `predicate`.
EvalContext oracle_context(const Workspace& ws, const std::string& predicate,
                           const OracleOptions& opts);

// Checks the definition body against its untyped form (parameters as the
// typed free variables), then the whole untyped description.
EquivalenceReport oracle_equiv(const Workspace& ws, const std::string& predicate,
                               const OracleOptions& opts);

}  // namespace tldf

#endif  // TLDFORGE_WORKSPACE_HPP
