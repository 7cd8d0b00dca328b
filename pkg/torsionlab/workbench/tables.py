"""
TorsionLab - Tabular output

Floats are written with 17 significant digits so a CSV reproduces the exact
doubles it was made from.
"""

from pathlib import Path
from typing import Optional, Sequence

import numpy as np
import pandas as pd

from ..zeta_engine import AbscissaBound, LengthSpectrum, SelbergMode, Truncation, log_ruelle, log_selberg

FLOAT_FORMAT = "%.17g"


def to_csv(frame: pd.DataFrame, path: Optional[str] = None) -> str:
    """Render a frame as CSV, writing it to path when given"""
    text = frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    if path:
        Path(path).write_text(text)
    return text


def zeta_grid(spec: LengthSpectrum, points: Sequence[complex], trunc: Truncation = Truncation(),
              function: str = "ruelle", mode: SelbergMode = SelbergMode.SYM, margin: float = 0.0,
              bound: AbscissaBound = AbscissaBound.DECLARED) -> pd.DataFrame:
    """log R (or log Z) with its tail bound on a list of points"""
    rows = []
    for s in points:
        if function == "selberg":
            value = log_selberg(s, spec, trunc, mode, margin=margin, bound=bound)
        else:
            value = log_ruelle(s, spec, trunc, margin)
        rows.append({
            "s_re": float(np.real(s)),
            "s_im": float(np.imag(s)),
            "log_R_re": value.value.real,
            "log_R_im": value.value.imag,
            "tail_bound": value.tail_bound,
        })
    return pd.DataFrame(rows, columns=["s_re", "s_im", "log_R_re", "log_R_im", "tail_bound"])
