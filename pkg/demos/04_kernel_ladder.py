"""Convergence ladders for the two scalar kernels.

The weighted oscillation, integrated against three Gaussian test
functions, approaches 2 pi h(0) <f, g>.  With every Gaussian centered
at the origin the quadratic error term cancels by symmetry and the
observed decay is quartic; shifting the centers restores the generic
quadratic rate.  The unweighted oscillation at fixed x just dies.
"""

from modwick import (
    GaussianTest, STANDARD_GAUSSIAN, delta_kernel, delta_kernel_target,
    fit_loglog_slope, vanishing_kernel,
)

lams = [0.4, 0.2, 0.1, 0.05]

print("weighted kernel, standard Gaussians (all centered at 0)")
target = delta_kernel_target(STANDARD_GAUSSIAN, STANDARD_GAUSSIAN,
                             STANDARD_GAUSSIAN)
print("  target 2 pi^{3/2} = %.12f" % target.real)
errs = []
for lam in lams:
    value = delta_kernel(STANDARD_GAUSSIAN, STANDARD_GAUSSIAN,
                         STANDARD_GAUSSIAN, lam)
    errs.append(abs(value - target))
    print("  lambda=%5.2f  J=%.12f  |err|=%.3e" % (lam, value.real, errs[-1]))
print("  fitted log-log slope: %.3f  (quartic: symmetric centers)\n"
      % fit_loglog_slope(lams, errs))

print("same ladder with shifted centers f=G(0.4), g=G(0.0), h=G(0.7)")
f, g, h = GaussianTest(0.4, 1.0), GaussianTest(0.0, 1.0), GaussianTest(0.7, 1.0)
target = delta_kernel_target(f, g, h)
errs = [abs(delta_kernel(f, g, h, lam) - target) for lam in lams]
for lam, err in zip(lams, errs):
    print("  lambda=%5.2f  |err|=%.3e" % (lam, err))
print("  fitted log-log slope: %.3f  (generic quadratic rate)\n"
      % fit_loglog_slope(lams, errs))

print("unweighted kernel at x = 1: Gaussian collapse in lambda")
for lam in [1.0, 0.5, 0.4, 0.3]:
    print("  lambda=%4.1f  |q|=%.3e"
          % (lam, abs(vanishing_kernel(1.0, STANDARD_GAUSSIAN, lam))))
