"""Content-addressed caching for the expensive pipeline stages.

Everything is keyed by SHA-256 of the inputs plus the bits of
configuration that affect the result, so reruns and cross-command reuse
(build -> certify -> y3) hit the same entries.  The cache directory
defaults to ./.epwforge-cache and can be overridden by --cache-dir or
the EPWFORGE_CACHE environment variable.
"""

from __future__ import annotations

import gzip
import hashlib
import json
import os

import numpy as np


def default_cache_dir() -> str:
    return os.environ.get("EPWFORGE_CACHE", ".epwforge-cache")


class Cache:
    def __init__(self, root: str | None = None):
        self.root = root or default_cache_dir()

    def _path(self, kind: str, key: str, ext: str) -> str:
        return os.path.join(self.root, f"{kind}-{key[:32]}.{ext}")

    def ensure_root(self):
        os.makedirs(self.root, exist_ok=True)

    # -- json payloads -----------------------------------------------------
    def get_json(self, kind: str, key: str):
        path = self._path(kind, key, "json.gz")
        if not os.path.exists(path):
            return None
        with gzip.open(path, "rt") as fh:
            return json.load(fh)

    def put_json(self, kind: str, key: str, doc) -> str:
        self.ensure_root()
        path = self._path(kind, key, "json.gz")
        tmp = path + ".tmp"
        with gzip.open(tmp, "wt") as fh:
            json.dump(doc, fh, sort_keys=True)
        os.replace(tmp, path)
        return path

    # -- numpy payloads ------------------------------------------------------
    def get_npz(self, kind: str, key: str):
        path = self._path(kind, key, "npz")
        if not os.path.exists(path):
            return None
        return np.load(path, allow_pickle=False)

    def put_npz(self, kind: str, key: str, **arrays) -> str:
        self.ensure_root()
        path = self._path(kind, key, "npz")
        tmp = path + ".tmp.npz"
        np.savez_compressed(tmp, **arrays)
        os.replace(tmp, path)
        return path

    def checkpoint_path(self, tag: str) -> str:
        self.ensure_root()
        return os.path.join(self.root, f"ckpt-{tag}.gz")


def hash_of(*parts) -> str:
    h = hashlib.sha256()
    for p in parts:
        if isinstance(p, bytes):
            h.update(p)
        else:
            h.update(str(p).encode())
        h.update(b"\x00")
    return h.hexdigest()
