"""
Catalog Command - Inspect the registered closed-form submanifolds
"""

import json

from austere_kit.catalog import get_entry, list_entries
from austere_kit.core.errors import AustereError

from .base_command import BaseCommand


class CatalogCommand(BaseCommand):
    """List catalog entries or show one of them"""

    def execute(self, args) -> int:
        """Execute catalog command"""
        try:
            if args.action == "list":
                return self._list(args.json)
            if args.action == "show":
                if not args.name:
                    self.print_error("catalog show needs an entry name")
                    return 2
                return self._show(args.name)
        except AustereError as e:
            return self.fail(e)
        self.print_error(f"Unknown catalog action: {args.action}")
        return 2

    def _list(self, as_json: bool) -> int:
        rows = []
        for info in list_entries():
            entry = get_entry(info["name"])
            rows.append({
                "name": info["name"],
                "k": entry.spec.k,
                "n": entry.spec.n,
                "expected": entry.expected_verdict,
                "suite": info.get("suite", True),
                "provenance": entry.provenance_note,
            })
        if as_json:
            print(json.dumps(rows, indent=2, sort_keys=True))
            return 0

        print(f"{'name':<14} {'k':>2} {'n':>2}  {'expected':<17} provenance")
        for row in rows:
            expected = row["expected"] or "-"
            print(f"{row['name']:<14} {row['k']:>2} {row['n']:>2}  {expected:<17} {row['provenance']}")
        return 0

    def _show(self, name: str) -> int:
        entry = get_entry(name)
        info = next(i for i in list_entries() if i["name"] == name)
        print(f"📦 {entry.name}")
        print(f"   {info.get('description', '')}")
        print(f"   k={entry.spec.k}, n={entry.spec.n}, domain={entry.spec.domain_box.tolist()}")
        print(f"   expected verdict: {entry.expected_verdict or 'none'}")
        print(f"   surface branch:   {entry.expected_branch or 'none'}")
        print(f"   analytic II:      {'yes' if entry.analytic_II is not None else 'no'}")
        print(f"   parameters:       {info['parameters'] or 'none'}")
        print(f"   {entry.provenance_note}")
        return 0
