"""Search bounds, settable from flags or EDGERING_* environment variables."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Bounds:
    max_subset: int = 15  # E-K subset check cutoff
    max_gens: int = 16  # Betti oracle generator cap
    max_box: int = 6  # minimality box coordinate cap
    max_elim_vars: int = 26  # elimination ring size
    max_vertices: int = 24  # fundamental-set brute force
    char: int = 0  # 0 or a prime

    @classmethod
    def from_env(cls, environ=None) -> Bounds:
        env = os.environ if environ is None else environ
        kw = {}
        for f in fields(cls):
            key = "EDGERING_" + f.name.upper()
            if key in env:
                kw[f.name] = int(env[key])
        return cls(**kw)

    def override(self, **kw) -> Bounds:
        return replace(self, **{k: v for k, v in kw.items() if v is not None})
