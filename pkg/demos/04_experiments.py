"""Running the theorem-driven experiments and writing their reports.

The same runs are available from the command line, e.g.
``hmulab experiment counterexample_bp --out reports``.
"""

# %%
import tempfile

from hmulab.lab import run_experiment
from hmulab.lab.corpus import growing_corpus
from hmulab.lab.report import summary_table

# %% quick runs on reduced sizes
reports = [
    run_experiment("moment_asymptotics", beta=1.0),
    run_experiment("mu_nu_equivalence", s=1.0, alpha=1.0),
    run_experiment("block_bound"),
    run_experiment("necessity_probe", degree=1024),
    run_experiment("bmoa_boundedness", corpus=growing_corpus(10), max_log2=10),
    run_experiment("counterexample_bp", n_max_log2=16, degree=1024),
    # outside the theorem's range: the gate reports inconclusive
    run_experiment("counterexample_bp", beta=0.6),
]
print(summary_table(reports))

# %% every report serialises to JSON plus one CSV per curve
out = tempfile.mkdtemp(prefix="hmulab_")
for p in reports[2].write(out):
    print("wrote", p)
