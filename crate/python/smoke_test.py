"""Smoke test for the divext Python module.

Build and install with `pip install --no-build-isolation ./crates/py`, then run
`python python/smoke_test.py`.
"""

import divext_py as dx

params = dx.Params(3, 1, 2)
assert params.q == 3

eta = dx.Character.eta(params)
assert eta.order() == 2 and not eta.is_trivial()
assert eta.tensor(eta.dual()).is_trivial()
assert dx.mult_trivial_h1(eta, dualized=True)["finite"] == dx.invariants_oracle(eta, dualized=True)

triv = dx.Irrep.trivial(params)
pi = dx.Irrep(params, 2, 2)
assert pi == pi.canonical()
assert dx.ext(pi, pi, 0)["rendered"] == "1"
assert dx.ext(pi, pi, 1)["rendered"] == "2 (= ef+1)"

irreps = dx.canonical_irreps(params, ["0/1", "1/2"])
values = {dx.ext(x, y, 1)["rendered"] for x in irreps for y in irreps if x.level == y.level == 2}
assert values == {"0", "1", "2 (= ef+1)", "3 (= ef+2)"}, values

p5 = dx.Params(5, 1, 2)
assert dx.ext(dx.Irrep.trivial(p5), dx.Irrep.trivial(p5), 5)["rendered"] == "1"
try:
    dx.ext(triv, triv, 2, case="function-field")
except NotImplementedError:
    pass
else:
    raise AssertionError("middle degree over a function field should be unsupported")

report = dx.verify("ext-table", "ext_table = 3")
assert report["failed"] == 0 and report["passed"] == 1

print("python smoke test passed:", len(irreps), "irreps at q = 3")
