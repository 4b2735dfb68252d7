"""Named checks, suites and the concurrent suite runner."""

from __future__ import annotations

import json
import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Callable, NamedTuple

from . import matq, ncpoly, osc, qgroup, rmat
from .errors import UnknownCatalogKey
from .report import EXACT, NUMERIC, SuiteResult, run_check

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Params:
    q: complex = 1.3
    d: int = 8
    terms: int = 30
    max_order: int = 8
    clock_shift: tuple = ((4, 1), (6, 2))


class Check(NamedTuple):
    name: str
    mode: str
    run: Callable
    positive_q: bool = False


def _rep(name):
    return matq.builtin_rep(name)


def _fund_R(p):
    return rmat.fundamental_R()


def _spin1_R(p):
    return rmat.universal_R(_rep("spin1"), _rep("spin1"), p.max_order)


def _catalog():
    checks = [Check(f"confluence-{n.replace('_', '-')}", EXACT,
                    lambda p, n=n: ncpoly.check_confluence(ncpoly.builtin_presentation(n)))
              for n in ncpoly.PRESENTATION_NAMES]
    checks += [
        Check("classical-plane", EXACT, lambda p: ncpoly.check_classical_plane()),
        Check("covariance", EXACT, lambda p: qgroup.check_covariance()),
        Check("detq-central", EXACT, lambda p: qgroup.check_detq_central()),
        Check("t-inverse", EXACT, lambda p: qgroup.check_t_inverse()),
        Check("delta-fun", EXACT, lambda p: qgroup.check_delta_fun()),
        Check("corep-fund", EXACT,
              lambda p: qgroup.check_corepresentation(qgroup.fundamental_T(), "corep-fund")),
        Check("corep-spin1", EXACT,
              lambda p: qgroup.check_corepresentation(qgroup.t1_spin1(), "corep-spin1")),
        Check("delta-uq-q", EXACT, lambda p: qgroup.check_delta_uq("q")),
        Check("delta-uq-qinv", EXACT, lambda p: qgroup.check_delta_uq("qinv")),
        Check("delta-flip", EXACT, lambda p: qgroup.check_delta_flip()),
        Check("rep-fund", EXACT, lambda p: matq.check_rep(_rep("fund"))),
        Check("rep-spin1", EXACT, lambda p: matq.check_rep(_rep("spin1"))),
        Check("rep-classical", NUMERIC, lambda p: matq.check_rep_classical()),
        Check("coproduct-rep", EXACT, lambda p: matq.check_coproduct_rep()),
        Check("universal-t-fund", EXACT, lambda p: matq.check_universal_T(_rep("fund"), p.max_order)),
        Check("universal-t-spin1", EXACT, lambda p: matq.check_universal_T(_rep("spin1"), p.max_order)),
        Check("r-fund", EXACT, lambda p: rmat.check_fundamental_R()),
        Check("r-universal-2", EXACT, lambda p: rmat.check_universal_R_fund(p.max_order)),
        Check("r-universal-3", EXACT, lambda p: rmat.check_universal_R_spin1(p.max_order)),
        Check("ybe-2", EXACT, lambda p: rmat.check_ybe(_fund_R(p))),
        Check("ybe-3", EXACT, lambda p: rmat.check_ybe(_spin1_R(p))),
        Check("ybe-mixed", EXACT, lambda p: rmat.check_ybe_mixed()),
        Check("braid-2", EXACT, lambda p: rmat.check_braid(_fund_R(p))),
        Check("braid-far-commute", EXACT, lambda p: rmat.check_braid_far(_fund_R(p))),
        Check("intertwine-2", EXACT,
              lambda p: rmat.check_intertwiner(_fund_R(p), _rep("fund"), _rep("fund"))),
        Check("intertwine-3", EXACT,
              lambda p: rmat.check_intertwiner(_spin1_R(p), _rep("spin1"), _rep("spin1"))),
        Check("rtt", EXACT, lambda p: rmat.check_rtt()),
        Check("r-scale-invariance", EXACT, lambda p: rmat.check_scale_invariance()),
        Check("qnumber-identity", EXACT, lambda p: osc.check_qnumber_identity()),
        Check("boson-ccr", NUMERIC, lambda p: osc.check_boson_ccr(p.d)),
        Check("qboson-relations", NUMERIC, lambda p: osc.check_qboson_relations(p.d, p.q), True),
        Check("oscillator-spectrum", NUMERIC, lambda p: osc.check_hamiltonian_spectrum(p.d, p.q), True),
        Check("js-su2", NUMERIC, lambda p: osc.check_js(p.d, 1.0)),
        Check("js-suq2", NUMERIC, lambda p: osc.check_js(p.d, p.q), True),
        Check("addition-q", NUMERIC, lambda p: osc.check_addition_rules(p.d, p.q, "q"), True),
        Check("addition-qinv", NUMERIC, lambda p: osc.check_addition_rules(p.d, p.q, "qinv"), True),
        Check("clock-shift", NUMERIC, lambda p: osc.check_clock_shift(p.clock_shift)),
    ]
    checks += [Check(f"rll-{kind}", EXACT, lambda p, kind=kind: rmat.check_rll(kind))
               for kind in rmat.RLL_KINDS]
    return {c.name: c for c in checks}


CHECKS = _catalog()


@dataclass
class Config:
    defaults: dict
    suites: dict = field(default_factory=dict)

    @property
    def suite_names(self):
        return ("all",) + tuple(self.suites)

    def suite(self, name):
        if name == "all":
            return sorted({c for names in self.suites.values() for c in names})
        try:
            return list(self.suites[name])
        except KeyError:
            raise UnknownCatalogKey("suite", name, self.suite_names) from None

    def params(self, **overrides):
        values = {**self.defaults, **{k: v for k, v in overrides.items() if v is not None}}
        return Params(q=values["q"], d=int(values["d"]), terms=int(values["terms"]),
                      max_order=int(values["max_order"]),
                      clock_shift=tuple(tuple(pair) for pair in values["clock_shift"]))

    @property
    def workers(self):
        return int(self.defaults.get("workers", 0)) or os.cpu_count() or 1


def load_config(path=None):
    """Packaged suites.json, overlaid by the file at `path` when given."""
    packaged = json.loads(resources.files("qdeform").joinpath("suites.json").read_text())
    defaults, suites = dict(packaged["defaults"]), dict(packaged["suites"])
    if path is not None:
        user = json.loads(Path(path).read_text())
        defaults.update(user.get("defaults", {}))
        suites.update(user.get("suites", {}))
    for names in suites.values():
        for name in names:
            if name not in CHECKS:
                raise UnknownCatalogKey("check", name, sorted(CHECKS))
    return Config(defaults, suites)


def resolve(selection, config):
    """Suite name or single check name -> (suite label, ordered check names)."""
    if selection in CHECKS:
        return selection, [selection]
    return selection, config.suite(selection)


def run_suite(label, names, params, workers=None):
    """Run the named checks concurrently; reports come back sorted by name."""
    start_time = time.time()
    futures = {}
    with ThreadPoolExecutor(max_workers=workers or os.cpu_count() or 1) as executor:
        for name in names:
            check = CHECKS[name]
            futures[name] = executor.submit(run_check, name, check.mode, check.run, params)
    reports = sorted((future.result() for future in futures.values()), key=lambda r: r.name)
    elapsed = time.time() - start_time
    logger.info("Completed %d checks in %.2f seconds", len(reports), elapsed)
    return SuiteResult(label, tuple(reports))
