/* Copyright 2026 The dqkit Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to dqkit.
 *
 * Dual quaternions cross the boundary as double[8] in scalar-first order
 * (1, i, j, k, E, Ei, Ej, Ek). Matrices are row-major. Every function returns
 * a dqkit_status; on failure dqkit_last_error() describes the problem for the
 * calling thread.
 */

#ifndef DQKIT_DQKIT_H_
#define DQKIT_DQKIT_H_

#include <stddef.h>

#if defined(_WIN32)
#if defined(DQKIT_BUILDING_C_API)
#define DQKIT_API __declspec(dllexport)
#else
#define DQKIT_API __declspec(dllimport)
#endif
#else
#define DQKIT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dqkit_status {
  DQKIT_OK = 0,
  DQKIT_ERR_INVALID_ARGUMENT = 1,
  DQKIT_ERR_DOMAIN = 2,
  DQKIT_ERR_DIMENSION = 3,
  DQKIT_ERR_NOT_SET = 4,
  DQKIT_ERR_INFEASIBLE = 5,
  DQKIT_ERR_MAX_ITERATIONS = 6,
  DQKIT_ERR_MODEL_FILE = 7,
  DQKIT_ERR_IO = 8,
  DQKIT_ERR_INTERNAL = 9
} dqkit_status;

typedef struct dqkit_robot dqkit_robot;
typedef struct dqkit_scene dqkit_scene;
typedef struct dqkit_report dqkit_report;

DQKIT_API const char* dqkit_version(void);
/* Message for the last failed call on this thread, "" if none. */
DQKIT_API const char* dqkit_last_error(void);
DQKIT_API const char* dqkit_status_string(dqkit_status status);

/* --- dual quaternion arithmetic ---------------------------------------- */

DQKIT_API dqkit_status dqkit_dq_add(const double a[8], const double b[8], double out[8]);
DQKIT_API dqkit_status dqkit_dq_sub(const double a[8], const double b[8], double out[8]);
DQKIT_API dqkit_status dqkit_dq_mul(const double a[8], const double b[8], double out[8]);
DQKIT_API dqkit_status dqkit_dq_conj(const double a[8], double out[8]);
DQKIT_API dqkit_status dqkit_dq_inv(const double a[8], double out[8]);
DQKIT_API dqkit_status dqkit_dq_norm(const double a[8], double out[8]);
DQKIT_API dqkit_status dqkit_dq_exp(const double a[8], double out[8]);
DQKIT_API dqkit_status dqkit_dq_log(const double a[8], double out[8]);
DQKIT_API dqkit_status dqkit_dq_pow(const double a[8], double exponent, double out[8]);
/* r + E 0.5 p r for a unit quaternion r and pure quaternion p (given as 3 numbers). */
DQKIT_API dqkit_status dqkit_dq_pose(const double rotation[4], const double translation[3],
                                     double out[8]);
DQKIT_API dqkit_status dqkit_dq_translation(const double a[8], double out[3]);
DQKIT_API dqkit_status dqkit_dq_rotation(const double a[8], double out[4]);
DQKIT_API dqkit_status dqkit_dq_is_unit(const double a[8], int* out);
/* Writes at most `capacity` bytes including the terminator; `required`, if
 * not NULL, receives the full length plus one. */
DQKIT_API dqkit_status dqkit_dq_to_string(const double a[8], char* buffer, size_t capacity,
                                          size_t* required);

/* --- robots ----------------------------------------------------------------- */

DQKIT_API dqkit_status dqkit_robot_load(const char* path, dqkit_robot** out);
/* Catalog name: "lwr4", "youbot" or "differential_drive". */
DQKIT_API dqkit_status dqkit_robot_catalog(const char* name, dqkit_robot** out);
DQKIT_API void dqkit_robot_free(dqkit_robot* robot);
DQKIT_API dqkit_status dqkit_robot_dof(const dqkit_robot* robot, int* out);
DQKIT_API dqkit_status dqkit_robot_fkm(const dqkit_robot* robot, const double* q, size_t q_len,
                                       double out[8]);
/* out receives 8 x dof doubles, row-major. */
DQKIT_API dqkit_status dqkit_robot_pose_jacobian(const dqkit_robot* robot, const double* q,
                                                 size_t q_len, double* out, size_t out_len);

/* --- simulation ----------------------------------------------------------------- */

DQKIT_API dqkit_status dqkit_scene_load(const char* path, dqkit_scene** out);
DQKIT_API void dqkit_scene_free(dqkit_scene* scene);
/* Overrides; pass a negative value to keep the scene's setting. */
DQKIT_API dqkit_status dqkit_scene_set_timing(dqkit_scene* scene, double sampling_time,
                                              double total_time);
DQKIT_API dqkit_status dqkit_simulate(const dqkit_scene* scene, dqkit_report** out);
DQKIT_API void dqkit_report_free(dqkit_report* report);
DQKIT_API dqkit_status dqkit_report_rows(const dqkit_report* report, size_t* out);
DQKIT_API dqkit_status dqkit_report_obstacles(const dqkit_report* report, int* out);
/* Smallest d - d_safe of one obstacle (0 is the wall). */
DQKIT_API dqkit_status dqkit_report_min_clearance(const dqkit_report* report, int obstacle,
                                                  double* out);
/* Largest task error norm of the fixed manipulator over the run. */
DQKIT_API dqkit_status dqkit_report_max_manipulator_error(const dqkit_report* report,
                                                          double* out);
DQKIT_API dqkit_status dqkit_report_write_csv(const dqkit_report* report, const char* path);
DQKIT_API dqkit_status dqkit_report_write_svg(const dqkit_report* report, const char* path);

/* --- reference programs ------------------------------------------------------------- */

/* Pseudoinverse pose regulation of the catalog LWR4 (gain 10, T = 0.001). */
DQKIT_API dqkit_status dqkit_regress_pose_regulation(int* iterations, double* final_error);
/* Mean and sample standard deviation, in microseconds, of one product over
 * sets of 1000. */
DQKIT_API dqkit_status dqkit_bench_mul(long long iterations, double* mean_us,
                                       double* stddev_us);

#ifdef __cplusplus
}
#endif

#endif /* DQKIT_DQKIT_H_ */
