"""Picard groups of moduli stacks of G-bundles over pointed curves."""

import json

from ._piclat import (
    PiclatError,
    bruteforce_invariant_forms,
    coker_ev,
    coker_gamma_bar,
    coker_omega,
    coker_r_G,
    exit_code_for,
    multiplier,
    pi1,
    quantities,
    suite_names,
    verify,
)
from . import _piclat


def compute(group="", quantity="pi1", g=1, n=0, delta=None, delta_vec="", rigidified=False,
            characteristic=0, datum_text=""):
    """Report envelope as a dict; same fields as `piclat_cli compute --format json`."""
    return json.loads(_piclat.compute_json(group, quantity, g, n, delta, delta_vec, rigidified,
                                           characteristic, datum_text))


def table(family, **opts):
    return json.loads(_piclat.table_json(family, **opts))


def error_kind(err):
    return err.args[0] if err.args else None


__all__ = [
    "PiclatError", "bruteforce_invariant_forms", "coker_ev", "coker_gamma_bar", "coker_omega",
    "coker_r_G", "compute", "error_kind", "exit_code_for", "multiplier", "pi1", "quantities",
    "suite_names", "table", "verify",
]
