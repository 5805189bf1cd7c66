#ifndef C2LOOP_H
#define C2LOOP_H

#if defined(_WIN32)
#define C2L_API __declspec(dllexport)
#else
#define C2L_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

enum c2l_status {
    C2L_OK = 0,
    C2L_ERR_INPUT = 1,
    C2L_ERR_VERIFY,
    C2L_ERR_NOT_DIVISIBLE,
    C2L_ERR_REGISTRY_MISMATCH,
    C2L_ERR_DIV_ZERO,
    C2L_ERR_DOMAIN,
    C2L_ERR_NOT_FREE_FERMIONIC,
    C2L_ERR_LOOP_TRACK,
    C2L_ERR_NOT_FLIPPABLE,
    C2L_ERR_WINDOW_TOO_SMALL,
    C2L_ERR_STUCK,
    C2L_ERR_NOT_A_MONOMIAL,
    C2L_ERR_NOT_FOUND,
    C2L_ERR_NON_POSITIVE,
    C2L_ERR_HAS_LOOPS,
    C2L_ERR_INTRINSIC_VIOLATED,
    C2L_ERR_IO,
    C2L_ERR_INTERNAL
};

typedef struct c2l_graph c2l_graph;
typedef struct c2l_solid c2l_solid;
typedef struct c2l_taut c2l_taut;

/* message of the last failed call on this thread */
C2L_API const char* c2l_last_error(void);
C2L_API const char* c2l_status_name(int status);
/* every char** output is allocated by the library */
C2L_API void c2l_free_string(char* s);

/* quadrangulations */
C2L_API int c2l_graph_load(const char* json, c2l_graph** out);
C2L_API void c2l_graph_free(c2l_graph* g);
C2L_API int c2l_graph_validate(const c2l_graph* g, int* valid, char** report);
C2L_API int c2l_graph_tracks(const c2l_graph* g, char** report);
C2L_API int c2l_param_solve(const c2l_graph* g, const char* weights_json, char** report);

/* loop model; boundary_json may be NULL */
C2L_API int c2l_loops_enumerate(const c2l_graph* g, const char* weights_json, const char* boundary_json, char** report);
C2L_API int c2l_loops_partition(const c2l_graph* g, const char* weights_json, const char* boundary_json, char** report);

/* dimers */
C2L_API int c2l_dimers_verify(const c2l_graph* g, const char* weights_json, int* holds, char** report);
C2L_API int c2l_dimers_road_probabilities(const c2l_graph* g, const char* weights_json, char** report);
C2L_API int c2l_dimers_free_energy(const char* domain_json, int grid, double* value);
C2L_API int c2l_lobachevsky_free_energy(double theta, double* value);

/* stepped solids and the recurrence */
C2L_API int c2l_solid_load(const char* json, c2l_solid** out);
C2L_API void c2l_solid_free(c2l_solid* s);
C2L_API int c2l_solid_regular(const c2l_solid* s, int* regular, double* radius);
/* window < 0 picks the default window */
C2L_API int c2l_stepped_surface(const c2l_solid* s, int window, char** report);
/* order is NULL, "canonical" or "random:SEED" */
C2L_API int c2l_kashaev_solve_numeric(const c2l_solid* s, const char* init_json, const char* order, double* origin,
                              char** report);
C2L_API int c2l_kashaev_solve_symbolic(const c2l_solid* s, const char* order, char** poly_json);
C2L_API int c2l_kashaev_yb_row(int row, int side_swap, int* holds, char** report);

/* taut configurations; init_json NULL means symbolic */
C2L_API int c2l_taut_build(const c2l_solid* s, int extra, c2l_taut** out);
C2L_API void c2l_taut_free(c2l_taut* t);
C2L_API int c2l_taut_count(const c2l_taut* t, int* count);
C2L_API int c2l_taut_enumerate(const c2l_taut* t, char** report);
C2L_API int c2l_taut_partition(const c2l_taut* t, const char* init_json, char** report);
C2L_API int c2l_taut_verify(const c2l_taut* t, const char* init_json, int* holds, char** report);
C2L_API int c2l_taut_reconstruct(const c2l_taut* t, int* holds, char** report);
C2L_API int c2l_taut_sample(const c2l_taut* t, const char* init_json, unsigned seed, char** report);
C2L_API int c2l_groves_verify(const c2l_taut* t, int* holds, char** report);

/* limit shape */
C2L_API int c2l_shape_params(double a, double b, double c, char** report);
/* out_path may be NULL */
C2L_API int c2l_shape_rho(int n, double r, const char* out_path, char** report);
C2L_API int c2l_shape_curve(double r, int points, const char* out_path, char** report);

/* acceptance criteria 1..c2l_criteria() */
C2L_API int c2l_criteria(void);
C2L_API int c2l_verify_criterion(int id, const char* fixture_dir, int quick, int* passed, int* warning, char** report);

#ifdef __cplusplus
}
#endif

#endif
