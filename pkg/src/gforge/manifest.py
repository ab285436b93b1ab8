"""Reproducible run manifests for CLI invocations."""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field

MANIFEST_FORMAT = "gforge-manifest-v1"


def file_digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


@dataclass
class RunManifest:
    argv: list
    version: str
    seed: int | None = None
    inputs: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    elapsed_ms: int = 0
    exit_code: int | None = None

    def record_input(self, path) -> None:
        self.inputs[str(path)] = file_digest(path)

    def record_output(self, path) -> None:
        self.outputs[str(path)] = file_digest(path)

    def to_dict(self) -> dict:
        return {"format": MANIFEST_FORMAT, **asdict(self)}

    def write(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")

    @classmethod
    def read(cls, path) -> "RunManifest":
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
        if obj.pop("format", None) != MANIFEST_FORMAT:
            raise ValueError(f"{path} is not a {MANIFEST_FORMAT} file")
        return cls(**obj)


def replay(manifest: RunManifest) -> list[str]:
    """Re-run the recorded command and list outputs whose digest changed."""
    from .cli import main

    main(list(manifest.argv))
    bad = []
    for path, digest in manifest.outputs.items():
        try:
            now = file_digest(path)
        except FileNotFoundError:
            bad.append(f"{path}: missing")
            continue
        if now != digest:
            bad.append(f"{path}: digest {now} != recorded {digest}")
    return bad
