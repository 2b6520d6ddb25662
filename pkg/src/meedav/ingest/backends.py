"""Storage backends: local directory or a GitHub-style remote repository.

Both implement the same two-method interface (list files, read bytes), so
switching storage is a one-line environment variable change:

    MEEDAV_BACKEND=local:/data/emmt
    MEEDAV_BACKEND=github:owner/repo@main

The remote backend talks to the REST tree endpoint
``/repos/{owner}/{repo}/git/trees/{ref}?recursive=1`` for listings and to
the raw-content host for blob bytes, caching both in memory for the
session. ``MEEDAV_GITHUB_TOKEN`` supplies an optional bearer token.
"""

from __future__ import annotations

import os
import threading
from pathlib import Path
from typing import Protocol

import requests

from ..errors import BackendUnavailable, NetworkError, NotFound, RateLimited

BACKEND_ENV = "MEEDAV_BACKEND"
TOKEN_ENV = "MEEDAV_GITHUB_TOKEN"

DEFAULT_API_BASE = "https://api.github.com"
DEFAULT_RAW_BASE = "https://raw.githubusercontent.com"


class StorageBackend(Protocol):
    """Uniform read-only view of a dataset."""

    def list_files(self) -> list[str]:
        """Relative paths of every file, posix-separated."""
        ...

    def read(self, path: str) -> bytes:
        """Exact content bytes of one file."""
        ...

    def describe(self) -> str:
        ...


class LocalBackend:
    """Reads trial files from a directory tree."""

    def __init__(self, root: str | Path):
        self.root = Path(root)

    def list_files(self) -> list[str]:
        if not self.root.is_dir():
            raise BackendUnavailable(f"{self.root} is not a directory")
        return sorted(
            p.relative_to(self.root).as_posix()
            for p in self.root.rglob("*")
            if p.is_file()
        )

    def read(self, path: str) -> bytes:
        target = self.root / path
        try:
            return target.read_bytes()
        except FileNotFoundError:
            raise NotFound(f"{path} not found under {self.root}") from None
        except OSError as exc:
            raise BackendUnavailable(f"cannot read {target}: {exc}") from exc

    def describe(self) -> str:
        return f"local:{self.root}"


class GithubBackend:
    """Streams blobs from a public (or token-readable) repository.

    Tree listings and blob bytes are cached unbounded for the process;
    the dataset scale this serves fits comfortably in memory. The cache
    allows concurrent readers; duplicate fetches of the same uncached
    path may happen under contention but always return identical bytes.
    """

    def __init__(
        self,
        owner: str,
        repo: str,
        ref: str = "main",
        token: str | None = None,
        session: requests.Session | None = None,
        api_base: str = DEFAULT_API_BASE,
        raw_base: str = DEFAULT_RAW_BASE,
    ):
        self.owner = owner
        self.repo = repo
        self.ref = ref
        self.token = token if token is not None else os.environ.get(TOKEN_ENV)
        self.session = session or requests.Session()
        self.api_base = api_base.rstrip("/")
        self.raw_base = raw_base.rstrip("/")
        self._tree: list[str] | None = None
        self._blobs: dict[str, bytes] = {}
        self._lock = threading.Lock()

    # -- http plumbing ----------------------------------------------------

    def _headers(self) -> dict[str, str]:
        headers = {"Accept": "application/vnd.github+json"}
        if self.token:
            headers["Authorization"] = f"Bearer {self.token}"
        return headers

    def _get(self, url: str):
        try:
            response = self.session.get(url, headers=self._headers(), timeout=30)
        except requests.RequestException as exc:
            raise NetworkError(f"GET {url} failed: {exc}") from exc
        remaining = response.headers.get("X-RateLimit-Remaining")
        if response.status_code in (403, 429) and remaining == "0":
            reset = response.headers.get("X-RateLimit-Reset")
            raise RateLimited(
                f"rate limit exhausted for {self.owner}/{self.repo}"
                + (f", resets at {reset}" if reset else ""),
                reset_at=float(reset) if reset else None,
            )
        if response.status_code == 404:
            raise NotFound(f"{url} -> 404")
        if response.status_code >= 400:
            raise NetworkError(f"GET {url} -> HTTP {response.status_code}")
        return response

    # -- backend interface -------------------------------------------------

    def list_files(self) -> list[str]:
        with self._lock:
            if self._tree is not None:
                return list(self._tree)
        url = (
            f"{self.api_base}/repos/{self.owner}/{self.repo}"
            f"/git/trees/{self.ref}?recursive=1"
        )
        payload = self._get(url).json()
        tree = sorted(
            entry["path"]
            for entry in payload.get("tree", [])
            if entry.get("type") == "blob"
        )
        with self._lock:
            self._tree = tree
        return list(tree)

    def read(self, path: str) -> bytes:
        with self._lock:
            cached = self._blobs.get(path)
        if cached is not None:
            return cached
        url = f"{self.raw_base}/{self.owner}/{self.repo}/{self.ref}/{path}"
        content = self._get(url).content
        with self._lock:
            self._blobs[path] = content
        return content

    def describe(self) -> str:
        return f"github:{self.owner}/{self.repo}@{self.ref}"


def parse_backend_spec(spec: str, session: requests.Session | None = None) -> StorageBackend:
    """Build a backend from a ``local:<dir>`` or ``github:<owner>/<repo>[@ref]`` spec."""
    kind, _, rest = spec.partition(":")
    if kind == "local" and rest:
        return LocalBackend(rest)
    if kind == "github" and rest:
        repo_part, _, ref = rest.partition("@")
        owner, _, repo = repo_part.partition("/")
        if owner and repo:
            return GithubBackend(owner, repo, ref or "main", session=session)
    raise BackendUnavailable(
        f"cannot parse backend spec {spec!r}; expected "
        "'local:<dir>' or 'github:<owner>/<repo>[@ref]'"
    )


def backend_from_env(environ=None) -> StorageBackend:
    """Resolve the backend from MEEDAV_BACKEND."""
    env = os.environ if environ is None else environ
    spec = env.get(BACKEND_ENV)
    if not spec:
        raise BackendUnavailable(f"{BACKEND_ENV} is not set")
    return parse_backend_spec(spec)


def list_remote_tree(backend: GithubBackend) -> list[str]:
    """Flat blob paths of the repository tree (cached for the session)."""
    return backend.list_files()


def fetch_blob(backend: GithubBackend, path: str) -> bytes:
    """Exact bytes of one blob (cached by path)."""
    return backend.read(path)
