"""Collects one status line per acceptance criterion."""

LINES: dict[int, str] = {}


def record(k: int, text: str, ok: bool) -> bool:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {k}: {text}"
    LINES[k] = line
    print(line)
    return ok
