"""Print the full identity residual table for one catalog case.

Every registered structural identity is evaluated at a sample point on
random frame-vector tuples; the table shows the residual against its
tolerance.  Change CASE or U to explore other points.
"""

import numpy as np

from kaehlerlab import identities, submanifold

CASE = "graph_c3"
U = [0.6, -0.3]


def main():
    case = submanifold.get_case(CASE)
    data = submanifold.extrinsic_data(case, U)
    print(f"case: {case.name}  at u = {np.asarray(U)}\n")
    print(f"{'check':<28}{'residual':>12}{'tolerance':>12}  verdict")
    print("-" * 62)
    for res in identities.run_identity_suite(data, rng_seed=42):
        verdict = "pass" if res["passed"] else "FAIL"
        print(f"{res['id']:<28}{res['residual']:>12.2e}"
              f"{res['tolerance']:>12.1e}  {verdict}")
    print("\ninternal two-path gates (route disagreement):")
    for key, val in data.two_path.items():
        print(f"  {key:<24}{val:.2e}")


if __name__ == "__main__":
    main()
