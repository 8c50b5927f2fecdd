import os
import re


def test_quickstart_block_runs():
    readme = os.path.join(os.path.dirname(__file__), "..", "README.md")
    with open(readme, encoding="utf-8") as fh:
        src = fh.read()
    match = re.search(r"## Quick start \(library\)\n\n```python\n(.*?)```",
                      src, re.S)
    assert match, "quick start block missing"
    exec(compile(match.group(1), "README-quickstart", "exec"), {})
