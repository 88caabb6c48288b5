"""Small shared helpers: JSONL IO, surface normalization, seeding."""

import json
import unicodedata
import zlib

import numpy as np


class JsonlError(ValueError):
    """Malformed JSONL input; carries the offending line number."""

    def __init__(self, path, lineno, message):
        super().__init__(f"{path}:{lineno}: {message}")
        self.path = path
        self.lineno = lineno


def read_jsonl(path):
    """Yield (lineno, object) for each non-empty line of a JSONL file.

    Lines holding a ``{"_meta": ...}`` object (provenance headers written by
    the CLI) are skipped.
    """
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise JsonlError(path, lineno, f"invalid JSON ({exc.msg})") from exc
            if isinstance(obj, dict) and "_meta" in obj:
                continue
            yield lineno, obj


def write_jsonl(path, records, meta=None):
    with open(path, "w", encoding="utf-8") as fh:
        if meta is not None:
            fh.write(json.dumps({"_meta": meta}, sort_keys=True) + "\n")
        for rec in records:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")


def write_json(path, obj):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def normalize_surface(text: str) -> str:
    """Canonical form used by every surface index and lookup.

    Unicode NFC, then case folding restricted to ASCII letters (CJK text has
    no case; folding must not touch it).
    """
    text = unicodedata.normalize("NFC", text)
    return "".join(c.lower() if c.isascii() else c for c in text)


def rng_from_seed(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def derive_seed(seed: int, *salt: str) -> int:
    """Deterministic child seed for a named pipeline stage.

    Stable across processes (unlike ``hash``), so one --seed drives every
    stage reproducibly.
    """
    ss = np.random.SeedSequence([seed, *(zlib.crc32(s.encode("utf-8")) for s in salt)])
    return int(ss.generate_state(1)[0])
