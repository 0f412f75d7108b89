#!/usr/bin/env python3
"""
Test Suite Runner
Runs the unit, integration and regression suites of the noir tag pipeline
through pytest and prints one summary.
"""

import subprocess
import sys
import time
from pathlib import Path

project_root = Path(__file__).parent.parent


class TestRunner:
    """Runs each test directory as its own pytest session"""

    SUITES = {
        'Unit': 'unit',
        'Integration': 'integration',
        'Regression': 'regression',
    }

    def __init__(self, verbose: bool = False):
        self.tests_dir = Path(__file__).parent
        self.verbose = verbose
        self.results = {}

    def run_suite(self, name: str, extra_args=()):
        directory = self.tests_dir / self.SUITES[name]
        print(f"\n📋 Running {name} tests ({directory.relative_to(project_root)})")
        command = [sys.executable, "-m", "pytest", str(directory), "--tb=short",
                   "-v" if self.verbose else "-q", *extra_args]
        try:
            result = subprocess.run(command, cwd=project_root, capture_output=not self.verbose,
                                    text=True, timeout=1800)
        except subprocess.TimeoutExpired:
            print("   ⏰ TIMEOUT (30 minutes)")
            self.results[name] = False
            return

        passed = result.returncode == 0
        print("   ✅ PASSED" if passed else f"   ❌ FAILED (exit code {result.returncode})")
        if not passed and not self.verbose:
            for line in result.stdout.strip().split('\n')[-10:]:
                print(f"   {line}")
        self.results[name] = passed

    def print_summary(self) -> bool:
        print("\n" + "=" * 70)
        print("📊 TEST SUITE RESULTS SUMMARY")
        print("=" * 70)
        for name, passed in self.results.items():
            print(f"   {'✅ PASS' if passed else '❌ FAIL'} - {name}")
        all_passed = bool(self.results) and all(self.results.values())
        print("\n🎉 ALL SUITES PASSED" if all_passed else "\n🛑 FAILURES - see output above")
        return all_passed


def main():
    """Main test runner entry point"""
    import argparse

    parser = argparse.ArgumentParser(description="Run the organized test suite")
    parser.add_argument("--unit-only", action="store_true", help="Run only unit tests")
    parser.add_argument("--integration-only", action="store_true", help="Run only integration tests")
    parser.add_argument("--regression-only", action="store_true", help="Run only the regression baseline check")
    parser.add_argument("--quick", action="store_true", help="Unit and regression tests only")
    parser.add_argument("--verbose", "-v", action="store_true", help="Stream pytest output")
    args = parser.parse_args()

    runner = TestRunner(verbose=args.verbose)

    print("🧪 NOIR TAG PIPELINE TEST SUITE")
    print("=" * 70)
    start_time = time.time()

    if args.unit_only:
        suites = ['Unit']
    elif args.integration_only:
        suites = ['Integration']
    elif args.regression_only:
        suites = ['Regression']
    elif args.quick:
        suites = ['Unit', 'Regression']
    else:
        suites = ['Unit', 'Integration', 'Regression']

    for suite in suites:
        runner.run_suite(suite)

    print(f"\n⏱️ Total execution time: {time.time() - start_time:.1f} seconds")
    sys.exit(0 if runner.print_summary() else 1)


if __name__ == "__main__":
    main()
