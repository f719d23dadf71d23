/* cg_host.c: generated from application CG, model digest 794fdd2539d3d122 */
#include <math.h>
#include <stdlib.h>

#include <CL/cl.h>

#define NUM_DEVICES 4

#define CHECK(call) \
  do { \
    if ((err = (call)) != CL_SUCCESS) { \
      status = -1; \
      goto cleanup; \
    } \
  } while (0)

static cl_int enqueue_range(cl_command_queue queue, cl_kernel kernel, cl_uint countArg, cl_int partialArg,
                            cl_mem partial, size_t offset, size_t count, size_t globalSize,
                            size_t localSize)
{
  cl_ulong n = (cl_ulong)count;
  cl_int err = clSetKernelArg(kernel, countArg, sizeof(cl_ulong), &n);
  if (err == CL_SUCCESS && partialArg >= 0) {
    err = clSetKernelArg(kernel, (cl_uint)partialArg, sizeof(cl_mem), &partial);
  }
  if (err != CL_SUCCESS) return err;
  return clEnqueueNDRangeKernel(queue, kernel, 1, &offset, &globalSize, &localSize, 0, NULL, NULL);
}

static double reduce_partials(cl_command_queue queue, cl_mem partial, size_t groups, double* staging)
{
  double sum = 0.0;
  clEnqueueReadBuffer(queue, partial, CL_TRUE, 0, groups * sizeof(double), staging, 0, NULL, NULL);
  for (size_t g = 0; g < groups; ++g) sum += staging[g];
  return sum;
}

static void finish_all(cl_command_queue* queue)
{
  for (int d = 0; d < NUM_DEVICES; ++d) clFinish(queue[d]);
}

int cg_run(const char* kernelSource, const int* in_rowPtr, const int* in_colIdx, const double* in_values, const double* in_b, double* out_x)
{
  int status = 0;
  cl_int err = CL_SUCCESS;
  cl_platform_id platform = NULL;
  cl_device_id devices[NUM_DEVICES];
  cl_uint found = 0;
  cl_context context = NULL;
  cl_command_queue queue[NUM_DEVICES] = {NULL};
  cl_program program = NULL;
  cl_kernel k_initr = NULL;
  cl_kernel k_initp = NULL;
  cl_kernel k_dotbb = NULL;
  cl_kernel k_dotrr0 = NULL;
  cl_kernel k_spmv = NULL;
  cl_kernel k_dotpap = NULL;
  cl_kernel k_updx = NULL;
  cl_kernel k_scaleap = NULL;
  cl_kernel k_updr = NULL;
  cl_kernel k_dotrr = NULL;
  cl_kernel k_updp = NULL;
  cl_mem buf_rowPtr = NULL;
  cl_mem buf_colIdx = NULL;
  cl_mem buf_values = NULL;
  cl_mem buf_b = NULL;
  cl_mem buf_loop_x = NULL;
  cl_mem buf_loop_r = NULL;
  cl_mem buf_loop_p = NULL;
  cl_mem buf_loop_spmv_y = NULL;
  cl_mem buf_loop_scaleap_z = NULL;
  cl_mem red_k_dotbb[NUM_DEVICES] = {NULL};
  cl_mem red_k_dotrr0[NUM_DEVICES] = {NULL};
  cl_mem red_k_dotpap[NUM_DEVICES] = {NULL};
  cl_mem red_k_dotrr[NUM_DEVICES] = {NULL};
  double* staging = NULL;
  void* zeros = NULL;
  double h_loop_alpha_q = 0;
  double h_loop_beta_q = 0;
  double h_dotbb_s = 0;
  double h_dotrr0_s = 0;
  double h_res0_r = 0;
  double h_loop_dotpap_s = 0;
  double h_loop_dotrr_s = 0;

  CHECK(clGetPlatformIDs(1, &platform, NULL));
  CHECK(clGetDeviceIDs(platform, CL_DEVICE_TYPE_GPU, NUM_DEVICES, devices, &found));
  if (found < NUM_DEVICES) {
    status = -1;
    goto cleanup;
  }
  context = clCreateContext(NULL, NUM_DEVICES, devices, NULL, NULL, &err);
  CHECK(err);
  for (int d = 0; d < NUM_DEVICES; ++d) {
    queue[d] = clCreateCommandQueue(context, devices[d], 0, &err);
    CHECK(err);
  }
  program = clCreateProgramWithSource(context, 1, &kernelSource, NULL, &err);
  CHECK(err);
  CHECK(clBuildProgram(program, NUM_DEVICES, devices, NULL, NULL, NULL));
  k_initr = clCreateKernel(program, "k_initr", &err);
  CHECK(err);
  k_initp = clCreateKernel(program, "k_initp", &err);
  CHECK(err);
  k_dotbb = clCreateKernel(program, "k_dotbb", &err);
  CHECK(err);
  k_dotrr0 = clCreateKernel(program, "k_dotrr0", &err);
  CHECK(err);
  k_spmv = clCreateKernel(program, "k_spmv", &err);
  CHECK(err);
  k_dotpap = clCreateKernel(program, "k_dotpap", &err);
  CHECK(err);
  k_updx = clCreateKernel(program, "k_updx", &err);
  CHECK(err);
  k_scaleap = clCreateKernel(program, "k_scaleap", &err);
  CHECK(err);
  k_updr = clCreateKernel(program, "k_updr", &err);
  CHECK(err);
  k_dotrr = clCreateKernel(program, "k_dotrr", &err);
  CHECK(err);
  k_updp = clCreateKernel(program, "k_updp", &err);
  CHECK(err);

  /* device buffers */
  buf_rowPtr = clCreateBuffer(context, CL_MEM_READ_WRITE, 530608, NULL, &err);
  CHECK(err);
  buf_colIdx = clCreateBuffer(context, CL_MEM_READ_WRITE, 13771804, NULL, &err);
  CHECK(err);
  buf_values = clCreateBuffer(context, CL_MEM_READ_WRITE, 27543608, NULL, &err);
  CHECK(err);
  buf_b = clCreateBuffer(context, CL_MEM_READ_WRITE, 1061208, NULL, &err);
  CHECK(err);
  buf_loop_x = clCreateBuffer(context, CL_MEM_READ_WRITE, 1061208, NULL, &err);
  CHECK(err);
  buf_loop_r = clCreateBuffer(context, CL_MEM_READ_WRITE, 1061208, NULL, &err);
  CHECK(err);
  buf_loop_p = clCreateBuffer(context, CL_MEM_READ_WRITE, 1061208, NULL, &err);
  CHECK(err);
  buf_loop_spmv_y = clCreateBuffer(context, CL_MEM_READ_WRITE, 1061208, NULL, &err);
  CHECK(err);
  buf_loop_scaleap_z = clCreateBuffer(context, CL_MEM_READ_WRITE, 1061208, NULL, &err);
  CHECK(err);
  red_k_dotbb[0] = clCreateBuffer(context, CL_MEM_READ_WRITE, 33168, NULL, &err);
  CHECK(err);
  red_k_dotbb[1] = clCreateBuffer(context, CL_MEM_READ_WRITE, 33168, NULL, &err);
  CHECK(err);
  red_k_dotbb[2] = clCreateBuffer(context, CL_MEM_READ_WRITE, 33168, NULL, &err);
  CHECK(err);
  red_k_dotbb[3] = clCreateBuffer(context, CL_MEM_READ_WRITE, 33168, NULL, &err);
  CHECK(err);
  red_k_dotrr0[0] = clCreateBuffer(context, CL_MEM_READ_WRITE, 33168, NULL, &err);
  CHECK(err);
  red_k_dotrr0[1] = clCreateBuffer(context, CL_MEM_READ_WRITE, 33168, NULL, &err);
  CHECK(err);
  red_k_dotrr0[2] = clCreateBuffer(context, CL_MEM_READ_WRITE, 33168, NULL, &err);
  CHECK(err);
  red_k_dotrr0[3] = clCreateBuffer(context, CL_MEM_READ_WRITE, 33168, NULL, &err);
  CHECK(err);
  red_k_dotpap[0] = clCreateBuffer(context, CL_MEM_READ_WRITE, 33168, NULL, &err);
  CHECK(err);
  red_k_dotpap[1] = clCreateBuffer(context, CL_MEM_READ_WRITE, 33168, NULL, &err);
  CHECK(err);
  red_k_dotpap[2] = clCreateBuffer(context, CL_MEM_READ_WRITE, 33168, NULL, &err);
  CHECK(err);
  red_k_dotpap[3] = clCreateBuffer(context, CL_MEM_READ_WRITE, 33168, NULL, &err);
  CHECK(err);
  red_k_dotrr[0] = clCreateBuffer(context, CL_MEM_READ_WRITE, 33168, NULL, &err);
  CHECK(err);
  red_k_dotrr[1] = clCreateBuffer(context, CL_MEM_READ_WRITE, 33168, NULL, &err);
  CHECK(err);
  red_k_dotrr[2] = clCreateBuffer(context, CL_MEM_READ_WRITE, 33168, NULL, &err);
  CHECK(err);
  red_k_dotrr[3] = clCreateBuffer(context, CL_MEM_READ_WRITE, 33168, NULL, &err);
  CHECK(err);
  staging = malloc(4146 * sizeof(double));
  if (!staging) {
    status = -1;
    goto cleanup;
  }

  /* inputs */
  zeros = calloc(27543608, 1);
  if (!zeros) {
    status = -1;
    goto cleanup;
  }
  CHECK(clEnqueueWriteBuffer(queue[0], buf_rowPtr, CL_TRUE, 0, 530608, in_rowPtr, 0, NULL, NULL));
  CHECK(clEnqueueWriteBuffer(queue[0], buf_colIdx, CL_TRUE, 0, 13771804, in_colIdx, 0, NULL, NULL));
  CHECK(clEnqueueWriteBuffer(queue[0], buf_values, CL_TRUE, 0, 27543608, in_values, 0, NULL, NULL));
  CHECK(clEnqueueWriteBuffer(queue[0], buf_b, CL_TRUE, 0, 1061208, in_b, 0, NULL, NULL));
  CHECK(clEnqueueWriteBuffer(queue[0], buf_loop_x, CL_TRUE, 0, 1061208, zeros, 0, NULL, NULL));
  CHECK(clEnqueueWriteBuffer(queue[0], buf_loop_r, CL_TRUE, 0, 1061208, zeros, 0, NULL, NULL));
  CHECK(clEnqueueWriteBuffer(queue[0], buf_loop_p, CL_TRUE, 0, 1061208, zeros, 0, NULL, NULL));
  CHECK(clEnqueueWriteBuffer(queue[0], buf_loop_spmv_y, CL_TRUE, 0, 1061208, zeros, 0, NULL, NULL));
  CHECK(clEnqueueWriteBuffer(queue[0], buf_loop_scaleap_z, CL_TRUE, 0, 1061208, zeros, 0, NULL, NULL));

  /* fixed kernel arguments */
  CHECK(clSetKernelArg(k_initr, 0, sizeof(cl_mem), &buf_b));
  CHECK(clSetKernelArg(k_initr, 1, sizeof(cl_mem), &buf_loop_r));
  CHECK(clSetKernelArg(k_initp, 0, sizeof(cl_mem), &buf_b));
  CHECK(clSetKernelArg(k_initp, 1, sizeof(cl_mem), &buf_loop_p));
  CHECK(clSetKernelArg(k_dotbb, 0, sizeof(cl_mem), &buf_b));
  CHECK(clSetKernelArg(k_dotbb, 1, sizeof(cl_mem), &buf_b));
  CHECK(clSetKernelArg(k_dotbb, 2, 64, NULL));
  CHECK(clSetKernelArg(k_dotrr0, 0, sizeof(cl_mem), &buf_loop_r));
  CHECK(clSetKernelArg(k_dotrr0, 1, sizeof(cl_mem), &buf_loop_r));
  CHECK(clSetKernelArg(k_dotrr0, 2, 64, NULL));
  CHECK(clSetKernelArg(k_spmv, 0, sizeof(cl_mem), &buf_rowPtr));
  CHECK(clSetKernelArg(k_spmv, 1, sizeof(cl_mem), &buf_colIdx));
  CHECK(clSetKernelArg(k_spmv, 2, sizeof(cl_mem), &buf_values));
  CHECK(clSetKernelArg(k_spmv, 3, sizeof(cl_mem), &buf_loop_p));
  CHECK(clSetKernelArg(k_spmv, 4, sizeof(cl_mem), &buf_loop_spmv_y));
  CHECK(clSetKernelArg(k_dotpap, 0, sizeof(cl_mem), &buf_loop_p));
  CHECK(clSetKernelArg(k_dotpap, 1, sizeof(cl_mem), &buf_loop_spmv_y));
  CHECK(clSetKernelArg(k_dotpap, 2, 64, NULL));
  CHECK(clSetKernelArg(k_updx, 1, sizeof(cl_mem), &buf_loop_p));
  CHECK(clSetKernelArg(k_updx, 2, sizeof(cl_mem), &buf_loop_x));
  CHECK(clSetKernelArg(k_updx, 3, sizeof(cl_mem), &buf_loop_x));
  CHECK(clSetKernelArg(k_scaleap, 1, sizeof(cl_mem), &buf_loop_spmv_y));
  CHECK(clSetKernelArg(k_scaleap, 2, sizeof(cl_mem), &buf_loop_scaleap_z));
  CHECK(clSetKernelArg(k_updr, 0, sizeof(cl_mem), &buf_loop_r));
  CHECK(clSetKernelArg(k_updr, 1, sizeof(cl_mem), &buf_loop_scaleap_z));
  CHECK(clSetKernelArg(k_updr, 2, sizeof(cl_mem), &buf_loop_r));
  CHECK(clSetKernelArg(k_dotrr, 0, sizeof(cl_mem), &buf_loop_r));
  CHECK(clSetKernelArg(k_dotrr, 1, sizeof(cl_mem), &buf_loop_r));
  CHECK(clSetKernelArg(k_dotrr, 2, 64, NULL));
  CHECK(clSetKernelArg(k_updp, 1, sizeof(cl_mem), &buf_loop_p));
  CHECK(clSetKernelArg(k_updp, 2, sizeof(cl_mem), &buf_loop_r));
  CHECK(clSetKernelArg(k_updp, 3, sizeof(cl_mem), &buf_loop_p));

  /* schedule */
  /* initr: copy */
  CHECK(enqueue_range(queue[0], k_initr, 2, -1, NULL, 0, 33163, 33168, 8));
  CHECK(enqueue_range(queue[1], k_initr, 2, -1, NULL, 33163, 33163, 33168, 8));
  CHECK(enqueue_range(queue[2], k_initr, 2, -1, NULL, 66326, 33163, 33168, 8));
  CHECK(enqueue_range(queue[3], k_initr, 2, -1, NULL, 99489, 33162, 33168, 8));
  finish_all(queue);
  /* initp: copy */
  CHECK(enqueue_range(queue[0], k_initp, 2, -1, NULL, 0, 33163, 33168, 8));
  CHECK(enqueue_range(queue[1], k_initp, 2, -1, NULL, 33163, 33163, 33168, 8));
  CHECK(enqueue_range(queue[2], k_initp, 2, -1, NULL, 66326, 33163, 33168, 8));
  CHECK(enqueue_range(queue[3], k_initp, 2, -1, NULL, 99489, 33162, 33168, 8));
  finish_all(queue);
  /* dotbb: dot_partial */
  CHECK(enqueue_range(queue[0], k_dotbb, 4, 3, red_k_dotbb[0], 0, 33163, 33168, 8));
  CHECK(enqueue_range(queue[1], k_dotbb, 4, 3, red_k_dotbb[1], 33163, 33163, 33168, 8));
  CHECK(enqueue_range(queue[2], k_dotbb, 4, 3, red_k_dotbb[2], 66326, 33163, 33168, 8));
  CHECK(enqueue_range(queue[3], k_dotbb, 4, 3, red_k_dotbb[3], 99489, 33162, 33168, 8));
  finish_all(queue);
  h_dotbb_s = 0.0;
  h_dotbb_s += reduce_partials(queue[0], red_k_dotbb[0], 4146, staging);
  h_dotbb_s += reduce_partials(queue[1], red_k_dotbb[1], 4146, staging);
  h_dotbb_s += reduce_partials(queue[2], red_k_dotbb[2], 4146, staging);
  h_dotbb_s += reduce_partials(queue[3], red_k_dotbb[3], 4146, staging);
  /* dotrr0: dot_partial */
  CHECK(enqueue_range(queue[0], k_dotrr0, 4, 3, red_k_dotrr0[0], 0, 33163, 33168, 8));
  CHECK(enqueue_range(queue[1], k_dotrr0, 4, 3, red_k_dotrr0[1], 33163, 33163, 33168, 8));
  CHECK(enqueue_range(queue[2], k_dotrr0, 4, 3, red_k_dotrr0[2], 66326, 33163, 33168, 8));
  CHECK(enqueue_range(queue[3], k_dotrr0, 4, 3, red_k_dotrr0[3], 99489, 33162, 33168, 8));
  finish_all(queue);
  h_dotrr0_s = 0.0;
  h_dotrr0_s += reduce_partials(queue[0], red_k_dotrr0[0], 4146, staging);
  h_dotrr0_s += reduce_partials(queue[1], red_k_dotrr0[1], 4146, staging);
  h_dotrr0_s += reduce_partials(queue[2], red_k_dotrr0[2], 4146, staging);
  h_dotrr0_s += reduce_partials(queue[3], red_k_dotrr0[3], 4146, staging);
  /* res0: rel_norm (host) */
  h_res0_r = h_dotbb_s > 0.0 ? sqrt(h_dotrr0_s) / sqrt(h_dotbb_s) : 0.0;
  /* loop: until loop.relres < 1e-10 */
  long iter_0 = 0;
  while (iter_0 < 1000 && h_res0_r > 1e-10) {
    /* loop.spmv: spmv_csr */
    CHECK(enqueue_range(queue[0], k_spmv, 5, -1, NULL, 0, 33163, 33168, 8));
    CHECK(enqueue_range(queue[1], k_spmv, 5, -1, NULL, 33163, 33163, 33168, 8));
    CHECK(enqueue_range(queue[2], k_spmv, 5, -1, NULL, 66326, 33163, 33168, 8));
    CHECK(enqueue_range(queue[3], k_spmv, 5, -1, NULL, 99489, 33162, 33168, 8));
    finish_all(queue);
    /* loop.dotpap: dot_partial */
    CHECK(enqueue_range(queue[0], k_dotpap, 4, 3, red_k_dotpap[0], 0, 33163, 33168, 8));
    CHECK(enqueue_range(queue[1], k_dotpap, 4, 3, red_k_dotpap[1], 33163, 33163, 33168, 8));
    CHECK(enqueue_range(queue[2], k_dotpap, 4, 3, red_k_dotpap[2], 66326, 33163, 33168, 8));
    CHECK(enqueue_range(queue[3], k_dotpap, 4, 3, red_k_dotpap[3], 99489, 33162, 33168, 8));
    finish_all(queue);
    h_loop_dotpap_s = 0.0;
    h_loop_dotpap_s += reduce_partials(queue[0], red_k_dotpap[0], 4146, staging);
    h_loop_dotpap_s += reduce_partials(queue[1], red_k_dotpap[1], 4146, staging);
    h_loop_dotpap_s += reduce_partials(queue[2], red_k_dotpap[2], 4146, staging);
    h_loop_dotpap_s += reduce_partials(queue[3], red_k_dotpap[3], 4146, staging);
    /* loop.alpha: ratio (host) */
    if (!(h_loop_dotpap_s > 0.0)) {
      status = -2;
      goto cleanup;
    }
    h_loop_alpha_q = h_dotrr0_s / h_loop_dotpap_s;
    /* loop.updx: axpy */
    CHECK(clSetKernelArg(k_updx, 0, sizeof(double), &h_loop_alpha_q));
    CHECK(enqueue_range(queue[0], k_updx, 4, -1, NULL, 0, 33163, 33168, 8));
    CHECK(enqueue_range(queue[1], k_updx, 4, -1, NULL, 33163, 33163, 33168, 8));
    CHECK(enqueue_range(queue[2], k_updx, 4, -1, NULL, 66326, 33163, 33168, 8));
    CHECK(enqueue_range(queue[3], k_updx, 4, -1, NULL, 99489, 33162, 33168, 8));
    finish_all(queue);
    /* loop.scaleap: scale */
    CHECK(clSetKernelArg(k_scaleap, 0, sizeof(double), &h_loop_alpha_q));
    CHECK(enqueue_range(queue[0], k_scaleap, 3, -1, NULL, 0, 33163, 33168, 8));
    CHECK(enqueue_range(queue[1], k_scaleap, 3, -1, NULL, 33163, 33163, 33168, 8));
    CHECK(enqueue_range(queue[2], k_scaleap, 3, -1, NULL, 66326, 33163, 33168, 8));
    CHECK(enqueue_range(queue[3], k_scaleap, 3, -1, NULL, 99489, 33162, 33168, 8));
    finish_all(queue);
    /* loop.updr: sub */
    CHECK(enqueue_range(queue[0], k_updr, 3, -1, NULL, 0, 33163, 33168, 8));
    CHECK(enqueue_range(queue[1], k_updr, 3, -1, NULL, 33163, 33163, 33168, 8));
    CHECK(enqueue_range(queue[2], k_updr, 3, -1, NULL, 66326, 33163, 33168, 8));
    CHECK(enqueue_range(queue[3], k_updr, 3, -1, NULL, 99489, 33162, 33168, 8));
    finish_all(queue);
    /* loop.dotrr: dot_partial */
    CHECK(enqueue_range(queue[0], k_dotrr, 4, 3, red_k_dotrr[0], 0, 33163, 33168, 8));
    CHECK(enqueue_range(queue[1], k_dotrr, 4, 3, red_k_dotrr[1], 33163, 33163, 33168, 8));
    CHECK(enqueue_range(queue[2], k_dotrr, 4, 3, red_k_dotrr[2], 66326, 33163, 33168, 8));
    CHECK(enqueue_range(queue[3], k_dotrr, 4, 3, red_k_dotrr[3], 99489, 33162, 33168, 8));
    finish_all(queue);
    h_loop_dotrr_s = 0.0;
    h_loop_dotrr_s += reduce_partials(queue[0], red_k_dotrr[0], 4146, staging);
    h_loop_dotrr_s += reduce_partials(queue[1], red_k_dotrr[1], 4146, staging);
    h_loop_dotrr_s += reduce_partials(queue[2], red_k_dotrr[2], 4146, staging);
    h_loop_dotrr_s += reduce_partials(queue[3], red_k_dotrr[3], 4146, staging);
    /* loop.res: rel_norm (host) */
    h_res0_r = h_dotbb_s > 0.0 ? sqrt(h_loop_dotrr_s) / sqrt(h_dotbb_s) : 0.0;
    /* loop.beta: ratio (host) */
    if (!(h_dotrr0_s > 0.0)) {
      status = -2;
      goto cleanup;
    }
    h_loop_beta_q = h_loop_dotrr_s / h_dotrr0_s;
    /* loop.updp: axpy */
    CHECK(clSetKernelArg(k_updp, 0, sizeof(double), &h_loop_beta_q));
    CHECK(enqueue_range(queue[0], k_updp, 4, -1, NULL, 0, 33163, 33168, 8));
    CHECK(enqueue_range(queue[1], k_updp, 4, -1, NULL, 33163, 33163, 33168, 8));
    CHECK(enqueue_range(queue[2], k_updp, 4, -1, NULL, 66326, 33163, 33168, 8));
    CHECK(enqueue_range(queue[3], k_updp, 4, -1, NULL, 99489, 33162, 33168, 8));
    finish_all(queue);
    /* loop.keeprr: copy (host) */
    h_dotrr0_s = h_loop_dotrr_s;
    ++iter_0;
  }
  finish_all(queue);

  /* outputs */
  CHECK(clEnqueueReadBuffer(queue[0], buf_loop_x, CL_TRUE, 0, 1061208, out_x, 0, NULL, NULL));

cleanup:
  free(staging);
  free(zeros);
  for (int d = 0; d < NUM_DEVICES; ++d) {
    if (red_k_dotbb[d]) clReleaseMemObject(red_k_dotbb[d]);
  }
  for (int d = 0; d < NUM_DEVICES; ++d) {
    if (red_k_dotrr0[d]) clReleaseMemObject(red_k_dotrr0[d]);
  }
  for (int d = 0; d < NUM_DEVICES; ++d) {
    if (red_k_dotpap[d]) clReleaseMemObject(red_k_dotpap[d]);
  }
  for (int d = 0; d < NUM_DEVICES; ++d) {
    if (red_k_dotrr[d]) clReleaseMemObject(red_k_dotrr[d]);
  }
  if (buf_rowPtr) clReleaseMemObject(buf_rowPtr);
  if (buf_colIdx) clReleaseMemObject(buf_colIdx);
  if (buf_values) clReleaseMemObject(buf_values);
  if (buf_b) clReleaseMemObject(buf_b);
  if (buf_loop_x) clReleaseMemObject(buf_loop_x);
  if (buf_loop_r) clReleaseMemObject(buf_loop_r);
  if (buf_loop_p) clReleaseMemObject(buf_loop_p);
  if (buf_loop_spmv_y) clReleaseMemObject(buf_loop_spmv_y);
  if (buf_loop_scaleap_z) clReleaseMemObject(buf_loop_scaleap_z);
  if (k_initr) clReleaseKernel(k_initr);
  if (k_initp) clReleaseKernel(k_initp);
  if (k_dotbb) clReleaseKernel(k_dotbb);
  if (k_dotrr0) clReleaseKernel(k_dotrr0);
  if (k_spmv) clReleaseKernel(k_spmv);
  if (k_dotpap) clReleaseKernel(k_dotpap);
  if (k_updx) clReleaseKernel(k_updx);
  if (k_scaleap) clReleaseKernel(k_scaleap);
  if (k_updr) clReleaseKernel(k_updr);
  if (k_dotrr) clReleaseKernel(k_dotrr);
  if (k_updp) clReleaseKernel(k_updp);
  if (program) clReleaseProgram(program);
  for (int d = 0; d < NUM_DEVICES; ++d) {
    if (queue[d]) clReleaseCommandQueue(queue[d]);
  }
  if (context) clReleaseContext(context);
  return status;
}
