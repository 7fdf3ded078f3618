#!/usr/bin/env python3
"""
Every pinned requirement is used somewhere in the tree
"""

import os
import re
import unittest
from pathlib import Path

PROJECT_ROOT = Path(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

# distribution name -> text that shows it is in use
USAGE_MARKERS = {
    'pytest-mock': 'mocker',
    'python-dotenv': 'dotenv',
}


def pinned_requirements():
    names = []
    for line in (PROJECT_ROOT / 'requirements.txt').read_text(encoding='utf-8').splitlines():
        line = line.split('#', 1)[0].strip()
        if line:
            names.append(re.split(r'[=<>~!]', line, maxsplit=1)[0].strip())
    return names


def source_text():
    paths = [PROJECT_ROOT / 'qheisenberg.py']
    paths += sorted((PROJECT_ROOT / 'src').rglob('*.py'))
    paths += sorted(p for p in (PROJECT_ROOT / 'tests').rglob('*.py') if p.name != 'test_requirements.py')
    return "\n".join(path.read_text(encoding='utf-8') for path in paths)


class TestRequirements(unittest.TestCase):

    def test_every_requirement_is_used(self):
        text = source_text()
        for name in pinned_requirements():
            marker = USAGE_MARKERS.get(name, name.replace('-', '_'))
            self.assertIn(marker, text, f"{name} is pinned but nothing uses it")

    def test_no_unconfigured_tooling(self):
        names = set(pinned_requirements())
        for tool in ('pytest-cov', 'black', 'isort', 'mypy', 'pre-commit', 'tox'):
            self.assertNotIn(tool, names)


if __name__ == '__main__':
    unittest.main()
