#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "tldforge/tldforge.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static char* slurp(const char* path) {
  FILE* f = fopen(path, "rb");
  if (!f) return NULL;
  fseek(f, 0, SEEK_END);
  long n = ftell(f);
  fseek(f, 0, SEEK_SET);
  char* buf = malloc((size_t)n + 1);
  size_t got = fread(buf, 1, (size_t)n, f);
  buf[got] = '\0';
  fclose(f);
  return buf;
}

int main(void) {
  const char* root = TLDF_FIXTURES;
  char path[1024];
  tldf_workspace* ws = NULL;
  tldf_result* r = NULL;

  EXPECT(strlen(tldf_version()) > 0);
  EXPECT(strcmp(tldf_status_string(TLDF_ERR_NOT_FOUND), "not found") == 0);

  snprintf(path, sizeof path, "%s/max_prefix/workspace.manifest", root);
  EXPECT(tldf_workspace_load(path, &ws, &r) == TLDF_OK);
  EXPECT(ws != NULL);
  EXPECT(tldf_result_error_count(r) == 0);
  tldf_result_free(r);
  if (!ws) return 1;

  EXPECT(tldf_predicates(ws, &r) == TLDF_OK);
  EXPECT(strcmp(tldf_result_output(r), "max_prefix_gen\nmax_prefix\n") == 0);
  tldf_result_free(r);

  tldf_options opts;
  tldf_options_init(&opts);
  EXPECT(tldf_run(ws, NULL, &opts, &r) == TLDF_OK);
  snprintf(path, sizeof path, "%s/max_prefix/expected.pl", root);
  char* expected = slurp(path);
  EXPECT(expected && strcmp(tldf_result_output(r), expected) == 0);
  EXPECT(strstr(tldf_result_report(r), "det (complete switch)") != NULL);
  free(expected);
  tldf_result_free(r);

  opts.stage = TLDF_STAGE_UNTYPED;
  EXPECT(tldf_run(ws, "max_prefix", &opts, &r) == TLDF_OK);
  char* dump = NULL;
  if (r) {
    const char* out = tldf_result_output(r);
    dump = malloc(strlen(out) + 1);
    strcpy(dump, out);
  }
  tldf_result_free(r);
  EXPECT(dump && tldf_workspace_load_dump(ws, dump, &r) == TLDF_OK);
  tldf_result_free(r);
  free(dump);

  opts.stage = TLDF_STAGE_CODE;
  opts.target = TLDF_TARGET_MERCURY;
  EXPECT(tldf_run(ws, "max_prefix_gen", &opts, &r) == TLDF_OK);
  EXPECT(strstr(tldf_result_output(r), ":- mode max_prefix_gen(in, out, in) is det.") != NULL);
  tldf_result_free(r);

  EXPECT(tldf_run(ws, "nowhere", &opts, &r) == TLDF_ERR_NOT_FOUND);
  tldf_result_free(r);
  opts.dir_index = -1;
  EXPECT(tldf_run(ws, NULL, &opts, &r) == TLDF_ERR_USAGE);
  tldf_result_free(r);

  EXPECT(tldf_skeleton(ws, "max_prefix", "L", &r) == TLDF_OK);
  EXPECT(strstr(tldf_result_output(r), "L = []") != NULL);
  tldf_result_free(r);
  EXPECT(tldf_skeleton(ws, "max_prefix", "M", &r) == TLDF_ERR_DIAGNOSTICS);
  EXPECT(strstr(tldf_result_diagnostics(r), "NotStructural") != NULL);
  tldf_result_free(r);
  EXPECT(tldf_skeleton(ws, "max_prefix", "Q", &r) == TLDF_ERR_NOT_FOUND);
  tldf_result_free(r);

  EXPECT(tldf_oracle_equiv(ws, "max_prefix_gen", 2, 4, TLDF_VARIANT_FAITHFUL, &r) == TLDF_OK);
  EXPECT(strstr(tldf_result_output(r), "max_prefix_gen at depth 2: ") != NULL);
  tldf_result_free(r);
  EXPECT(tldf_oracle_equiv(ws, "max_prefix_gen", 0, 4, 0, &r) == TLDF_ERR_USAGE);
  tldf_result_free(r);
  tldf_workspace_free(ws);

  ws = NULL;
  snprintf(path, sizeof path, "%s/mutual/workspace.manifest", root);
  EXPECT(tldf_workspace_load(path, &ws, &r) == TLDF_ERR_DIAGNOSTICS);
  EXPECT(ws == NULL);
  EXPECT(tldf_result_error_count(r) >= 1);
  EXPECT(strstr(tldf_result_diagnostics(r), "MutualRecursion") != NULL);
  tldf_result_free(r);
  EXPECT(tldf_workspace_load(path, &ws, NULL) == TLDF_ERR_DIAGNOSTICS);

  tldf_result_free(NULL);
  tldf_workspace_free(NULL);

  if (failures) fprintf(stderr, "%d failure(s)\n", failures);
  return failures ? 1 : 0;
}
