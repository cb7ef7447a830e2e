import glob
import json
import os
import unittest

import main

FIXTURE_FOLDER = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "fixtures")


def lookup(payload, dotted):
    """Follow a dotted path: dict keys by name, list items by integer index."""
    current = payload
    for part in dotted.split("."):
        if isinstance(current, list):
            current = current[int(part)]
        else:
            current = current[part]
    return current


class TestGoldenFixtures(unittest.TestCase):
    """Each fixtures/<name>.expected.json lists CLI runs on fixtures/<name>.ring and the values they must report."""

    def test_fixture_folder_is_populated(self):
        self.assertTrue(glob.glob(os.path.join(FIXTURE_FOLDER, "*.expected.json")))

    def test_fixtures(self):
        for expected_path in sorted(glob.glob(os.path.join(FIXTURE_FOLDER, "*.expected.json"))):
            name = os.path.basename(expected_path)[:-len(".expected.json")]
            problem_path = os.path.join(FIXTURE_FOLDER, f"{name}.ring")
            with open(expected_path, encoding="utf-8") as f:
                checks = json.load(f)["checks"]
            for check in checks:
                command, *rest = check["args"]
                label = f"{name}: {' '.join(check['args'])}"
                with self.subTest(label):
                    args = main.build_parser().parse_args([command, problem_path] + rest)
                    exit_code, report = main.run(args.command, args.file, vars(args))
                    payload = json.loads(report.to_json())
                    self.assertEqual(exit_code, check["exit_code"], f"{label}: {payload['result']}")
                    for dotted, value in check["expect"].items():
                        self.assertEqual(lookup(payload, dotted), value, f"{label}: {dotted}")


if __name__ == '__main__':
    unittest.main()
