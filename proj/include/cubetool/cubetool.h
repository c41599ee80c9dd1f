#ifndef CUBETOOL_H
#define CUBETOOL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CUBETOOL_API __declspec(dllexport)
#else
#define CUBETOOL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Values from 10 up mirror cubetool::ErrorCode. */
typedef enum ct_status {
  CT_OK = 0,
  CT_NEGATIVE = 1,
  CT_MALFORMED_COMPLEX = 10,
  CT_MALFORMED_MAP = 11,
  CT_MALFORMED_INPUT = 12,
  CT_UNKNOWN_VERTEX = 13,
  CT_UNKNOWN_WALL = 14,
  CT_UNKNOWN_COSET = 15,
  CT_UNKNOWN_CLASS = 16,
  CT_UNKNOWN_CORPUS_ITEM = 17,
  CT_DIMENSION_CAP_EXCEEDED = 20,
  CT_NOT_DIMENSION_PRESERVING = 21,
  CT_NOT_NPC = 22,
  CT_DISCONNECTED = 23,
  CT_REQUIRES_TWO_SIDED = 24,
  CT_ONE_SIDED_WALL = 25,
  CT_NOT_CONVEX = 26,
  CT_AMBIGUOUS = 27,
  CT_EMPTY_REGION = 28,
  CT_PRECONDITION_FAILED = 30,
  CT_COVERING_CHECK_FAILED = 31,
  CT_NOT_COVERING = 32,
  CT_CONDITION_FAILED = 33,
  CT_DIAGRAM_FAILED = 34,
  CT_CONDITION_VIOLATED = 35,
  CT_ORACLE_INCONSISTENT = 40,
  CT_BALL_BUDGET_EXCEEDED = 41,
  CT_BUDGET_EXCEEDED = 42,
  CT_NOT_SPANNING_TREE = 50,
  CT_NOT_A_CIRCUIT = 51,
  CT_UNBALANCED = 52,
  CT_INTERNAL = 99
} ct_status;

typedef struct ct_complex ct_complex;
typedef struct ct_map ct_map;

/* Every char** output is a NUL-terminated string owned by the caller and
   released with ct_string_free. Outputs are left untouched on failure.
   Reports are JSON objects with sorted keys. */

CUBETOOL_API const char* ct_version(void);
CUBETOOL_API const char* ct_status_name(int status);
/* Message of the last failure on this thread, "" when none. */
CUBETOOL_API const char* ct_last_error(void);
/* {"code": name, "message": text, "details": [...]} for the last failure. */
CUBETOOL_API const char* ct_last_error_json(void);
CUBETOOL_API void ct_string_free(char* s);
/* FNV-1a 64 as 16 hex digits. */
CUBETOOL_API int ct_digest(const char* data, size_t length, char** hex);

CUBETOOL_API int ct_complex_from_json(const char* json, ct_complex** out);
CUBETOOL_API int ct_complex_load(const char* path, ct_complex** out);
CUBETOOL_API void ct_complex_free(ct_complex* x);
CUBETOOL_API int ct_complex_to_json(const ct_complex* x, char** json);

/* The domain and codomain are read from "<name>.json" next to the map file. */
CUBETOOL_API int ct_map_load(const char* path, ct_map** out);
CUBETOOL_API int ct_map_from_json(const char* json, const ct_complex* domain, const ct_complex* codomain, ct_map** out);
CUBETOOL_API void ct_map_free(ct_map* f);

/* CT_OK when non-positively curved, CT_NEGATIVE otherwise. */
CUBETOOL_API int ct_check_npc(const ct_complex* x, char** report);
CUBETOOL_API int ct_subdivide(const ct_complex* x, char** complex_json, char** report);
/* dot may be NULL. */
CUBETOOL_API int ct_hyperplanes(const ct_complex* x, char** report, char** dot);
/* CT_OK when special, CT_NEGATIVE otherwise. */
CUBETOOL_API int ct_special(const ct_complex* x, char** report);
CUBETOOL_API int ct_cover_ball(const ct_complex* x, const char* base, int radius, char** ball_json, char** report);
/* region_json: {"root": vertex (optional), "halfspaces": [[wall, side], ...]}. */
CUBETOOL_API int ct_gate(const ct_complex* x, const char* region_json, const char* vertex, char** report);
/* dot may be NULL. */
CUBETOOL_API int ct_wall_graph(const ct_complex* x, int radius, int color, char** report, char** dot);
/* Any of completion_json, j, r, p may be NULL. */
CUBETOOL_API int ct_complete(const ct_map* f, char** completion_json, char** j, char** r, char** p, char** report);
/* square file: {"f": path, "s": path, "g": path, "t": path}, paths relative
   to it. CT_NEGATIVE when a condition fails. */
CUBETOOL_API int ct_functorial(const char* square_path, char** report);
/* ball_json may be NULL. */
CUBETOOL_API int ct_cusped(const char* group_json, int rho, int depth, int probe, uint64_t samples, uint64_t seed,
                           uint64_t budget, char** ball_json, char** report);
/* tree_csv: comma-separated edge names, may be empty. */
CUBETOOL_API int ct_gog_pi1(const char* gog_json, const char* base, const char* tree_csv, char** presentation_json,
                            char** report);
/* CT_NEGATIVE when unbalanced. modified_json may be NULL. */
CUBETOOL_API int ct_gluing_check(const char* ledger_json, int modify, char** modified_json, char** report);

CUBETOOL_API int ct_corpus_list(char** json);
/* {"files": [{"filename": name, "content": text}, ...]} */
CUBETOOL_API int ct_corpus_emit(const char* name, char** files_json);

#ifdef __cplusplus
}
#endif

#endif
