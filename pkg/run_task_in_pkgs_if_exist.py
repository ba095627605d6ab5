"""Run a poe task in every workspace member that defines it.

Usage: ``python run_task_in_pkgs_if_exist.py TASK [--only MEMBER]... [--keep-going] [-- TASK ARGS]``
"""

import argparse
import glob
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Set

import tomli
from poethepoet.app import PoeThePoet
from rich.console import Console
from rich.table import Table

console = Console()


@dataclass(frozen=True)
class Member:
    path: Path
    name: str
    tasks: Set[str]


def _expand(root: Path, patterns: List[str]) -> List[Path]:
    paths: List[Path] = []
    for pattern in patterns:
        if "*" in pattern:
            paths.extend(Path(p) for p in sorted(glob.glob(pattern, root_dir=root)))
        else:
            paths.append(Path(pattern))
    return paths


def discover_members(workspace_pyproject_file: Path) -> List[Path]:
    with workspace_pyproject_file.open("rb") as f:
        workspace = tomli.load(f)["tool"]["uv"]["workspace"]
    root = workspace_pyproject_file.parent
    excluded = set(_expand(root, workspace.get("exclude", [])))
    members = [p for p in _expand(root, workspace["members"]) if p not in excluded]
    return [p for p in members if (root / p / "pyproject.toml").exists()]


def poe_tasks(file: Path) -> Set[str]:
    with file.open("rb") as f:
        data = tomli.load(f)
    poe = data.get("tool", {}).get("poe", {})
    tasks = set(poe.get("tasks", {}))
    include: Optional[str] = poe.get("include")
    if include and (file.parent / include).exists():
        tasks |= poe_tasks(file.parent / include)
    return tasks


def load_member(root: Path, path: Path) -> Member:
    pyproject = root / path / "pyproject.toml"
    with pyproject.open("rb") as f:
        name = tomli.load(f).get("project", {}).get("name", path.name)
    return Member(path, name, poe_tasks(pyproject))


def parse_args(argv: List[str]) -> argparse.Namespace:
    passthrough: List[str] = []
    if "--" in argv:
        cut = argv.index("--")
        argv, passthrough = argv[:cut], argv[cut + 1 :]
    parser = argparse.ArgumentParser(description="Run a poe task in each workspace member that defines it.")
    parser.add_argument("task")
    parser.add_argument("--only", action="append", default=[], help="member name or directory, repeatable")
    parser.add_argument("--keep-going", action="store_true", help="run the remaining members after a failure")
    args = parser.parse_args(argv)
    args.passthrough = passthrough
    return args


def main() -> None:
    args = parse_args(sys.argv[1:])
    root = Path(__file__).parent
    members = [load_member(root, p) for p in discover_members(root / "pyproject.toml")]
    if args.only:
        members = [m for m in members if m.name in args.only or m.path.name in args.only]
        if not members:
            console.print(f"[red]no workspace member matches {args.only}[/red]")
            sys.exit(2)

    outcomes: Dict[str, str] = {}
    failed = 0
    for member in members:
        if args.task not in member.tasks:
            outcomes[member.name] = "skipped"
            continue
        console.print(f"Running task [bold]{args.task}[/bold] in {member.path}")
        result = PoeThePoet(cwd=root / member.path)(cli_args=[args.task, *args.passthrough])
        outcomes[member.name] = "ok" if result == 0 else f"exit {result}"
        if result:
            failed = failed or result
            if not args.keep_going:
                break

    summary = Table("member", args.task)
    for name, outcome in outcomes.items():
        summary.add_row(name, outcome)
    console.print(summary)
    if not any(outcome != "skipped" for outcome in outcomes.values()):
        console.print(f"[yellow]task {args.task} is not defined in any member[/yellow]")
    sys.exit(failed)


if __name__ == "__main__":
    main()
