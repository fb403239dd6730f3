"""Persistent zero cache: one JSON-lines file per modulus, atomic writes.

Layout under the cache directory (argument, else the LZEROS_CACHE
environment variable, else ./.lzeros-cache):

    manifest.json      accuracy envelope + package version
    q00027.jsonl       one line per character mod 27

Each line is a self-contained record

    {"q": 27, "chi": [2], "conductor": 27, "t_max": 200.0,
     "complete": true, "ordinates": ["-1.2...e+02", ...]}

with ordinates serialized as %.17g strings (ascending, two sided), which
round-trip doubles exactly and stay diffable. Files are written by tmp +
rename, so readers never observe a partial file; the family builder
assigns each modulus to exactly one writer.

A cache is readable only under the envelope it was built with: opening a
directory whose manifest disagrees with the requested envelope raises
CacheCorruptError rather than silently mixing accuracies.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__, lfun
from .arith import family_moduli
from .characters import character_group
from .errors import CacheCorruptError, CacheMissError, ConfigurationError

__all__ = ["CacheRecord", "ZeroCache", "build_family"]

_FORMAT = 1
_DEFAULT_DIR = ".lzeros-cache"


@dataclass
class CacheRecord:
    """One character's stored scan."""

    q: int
    exponents: tuple[int, ...]
    conductor: int
    t_max: float
    complete: bool
    ordinates: list[float]


def _fmt(x: float) -> str:
    return "%.17g" % float(x)


class ZeroCache:
    """Directory-backed store of zero scans keyed by (q, exponents)."""

    def __init__(self, directory: str | os.PathLike | None = None,
                 bracket_halfwidth: float = 1.0e-9,
                 max_height: float = lfun.MAX_HEIGHT) -> None:
        if directory is None:
            directory = os.environ.get("LZEROS_CACHE", _DEFAULT_DIR)
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self.envelope = {"format": _FORMAT,
                         "bracket_halfwidth": float(bracket_halfwidth),
                         "max_height": float(max_height)}
        self._check_manifest()

    # -- manifest ----------------------------------------------------------

    def _manifest_path(self) -> Path:
        return self.directory / "manifest.json"

    def _check_manifest(self) -> None:
        path = self._manifest_path()
        if path.exists():
            try:
                stored = json.loads(path.read_text())
            except (json.JSONDecodeError, OSError) as exc:
                raise CacheCorruptError("unreadable manifest %s" % path) from exc
            for key, val in self.envelope.items():
                if stored.get(key) != val:
                    raise CacheCorruptError(
                        "cache %s built under envelope %r, requested %r; "
                        "rebuild or use a different directory"
                        % (self.directory, stored, self.envelope))
        else:
            body = dict(self.envelope)
            body["version"] = __version__
            self._atomic_write(path, json.dumps(body, indent=1) + "\n")

    # -- low-level file handling -------------------------------------------

    def _modulus_path(self, q: int) -> Path:
        return self.directory / ("q%05d.jsonl" % q)

    @staticmethod
    def _atomic_write(path: Path, text: str) -> None:
        fd, tmp = tempfile.mkstemp(dir=str(path.parent), suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(text)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def _load_modulus(self, q: int) -> dict[tuple[int, ...], dict]:
        path = self._modulus_path(q)
        if not path.exists():
            return {}
        out: dict[tuple[int, ...], dict] = {}
        try:
            with open(path) as fh:
                for line in fh:
                    if not line.strip():
                        continue
                    raw = json.loads(line)
                    key = tuple(int(e) for e in raw["chi"])
                    raw["q"], raw["conductor"] = int(raw["q"]), int(raw["conductor"])
                    raw["t_max"] = float(raw["t_max"])
                    raw["complete"] = bool(raw["complete"])
                    raw["ordinates"] = [float(v) for v in raw["ordinates"]]
                    out[key] = raw
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise CacheCorruptError("corrupt cache file %s" % path) from exc
        return out

    def _store_modulus(self, q: int, records: dict[tuple[int, ...], dict]) -> None:
        lines = []
        for key in sorted(records):
            raw = records[key]
            body = {"q": int(raw["q"]),
                    "chi": [int(e) for e in key],
                    "conductor": int(raw["conductor"]),
                    "t_max": float(raw["t_max"]),
                    "complete": bool(raw["complete"]),
                    "ordinates": [_fmt(v) for v in raw["ordinates"]]}
            lines.append(json.dumps(body, separators=(",", ":")))
        self._atomic_write(self._modulus_path(q), "\n".join(lines) + "\n")

    # -- public API ----------------------------------------------------------

    def store(self, scan: lfun.ZeroScan, conductor: int | None = None) -> None:
        """Insert or replace one character's scan (atomic per modulus)."""
        if scan.T > self.envelope["max_height"]:
            raise ConfigurationError("scan exceeds the cache height envelope")
        if conductor is None:
            chi = character_group(scan.q).by_exponents(scan.exponents)
            conductor = chi.conductor
        recs = self._load_modulus(scan.q)
        recs[tuple(scan.exponents)] = {
            "q": scan.q, "conductor": conductor, "t_max": scan.T,
            "complete": scan.complete,
            "ordinates": list(scan.ordinates),
        }
        self._store_modulus(scan.q, recs)

    def read(self, q: int, exponents: tuple[int, ...],
             T_max: float) -> CacheRecord:
        """The stored record, provided it reaches at least T_max."""
        recs = self._load_modulus(q)
        key = tuple(int(e) for e in exponents)
        if key not in recs:
            raise CacheMissError("no record for q=%d chi=%r" % (q, key))
        raw = recs[key]
        if raw["t_max"] < T_max:
            raise CacheMissError(
                "record q=%d chi=%r stops at T=%.6g < %.6g"
                % (q, key, raw["t_max"], T_max))
        return CacheRecord(q=q, exponents=key, conductor=raw["conductor"],
                           t_max=raw["t_max"], complete=raw["complete"],
                           ordinates=raw["ordinates"])

    def has(self, q: int, exponents: tuple[int, ...], T_max: float) -> bool:
        try:
            self.read(q, exponents, T_max)
            return True
        except (CacheMissError, CacheCorruptError):
            return False

    def missing(self, Q: float, T_max: float) -> list[tuple[int, tuple[int, ...]]]:
        """Family characters not yet cached to height T_max."""
        out = []
        for q in family_moduli(Q):
            stored = self._load_modulus(q)
            for chi in character_group(q).primitive:
                raw = stored.get(chi.exponents)
                if raw is None or raw["t_max"] < T_max or not raw["complete"]:
                    out.append((q, chi.exponents))
        return out


# --------------------------------------------------------------------------
# family builder
# --------------------------------------------------------------------------

def _scan_modulus(args: tuple[int, float, float]) -> list[dict]:
    """Worker: scan every primitive character mod q (picklable unit)."""
    q, T_max, grid_step = args
    grp = character_group(q)
    prim = grp.primitive
    if not prim:
        return []
    n = max(2, int(math.ceil(2.0 * T_max / grid_step)))
    ts = np.linspace(-T_max, T_max, n + 1)
    grid = lfun.HurwitzGrid.build(q, ts)
    out = []
    for chi in prim:
        scan = lfun.find_zeros(chi, T_max, grid_step=grid_step, grid=grid)
        out.append({"q": q, "exponents": chi.exponents,
                    "conductor": chi.conductor, "t_max": scan.T,
                    "complete": scan.complete,
                    "ordinates": list(scan.ordinates), "scan": scan})
    return out


def build_family(cache: ZeroCache, Q: float, T_max: float,
                 grid_step: float = 0.05, jobs: int = 1,
                 progress=None) -> int:
    """Scan and store every primitive character with modulus in (Q, 2Q).

    Work is scheduled one modulus per job so each file has exactly one
    writer; already-cached characters are skipped. Returns the number of
    characters scanned.
    """
    todo = [q for q in family_moduli(Q)
            if any(not cache.has(q, c.exponents, T_max)
                   for c in character_group(q).primitive)]
    scanned = 0

    def _write(results: list[dict]) -> None:
        nonlocal scanned
        for rec in results:
            cache.store(rec["scan"], conductor=rec["conductor"])
            scanned += 1

    if jobs <= 1:
        for q in todo:
            _write(_scan_modulus((q, T_max, grid_step)))
            if progress is not None:
                progress(q)
    else:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = {pool.submit(_scan_modulus, (q, T_max, grid_step)): q
                       for q in todo}
            for fut in futures:
                _write(fut.result())
                if progress is not None:
                    progress(futures[fut])
    return scanned
