"""Report which tlfree dependencies are importable, with installed versions."""
import importlib.util
import sys
from importlib import metadata

from tlfree_core.config import ConfigValidator

# Needed only to run the test suite
DEV_PACKAGES = {
    "pytest": "pytest",
    "pytest-cov": "pytest_cov",
}


def _version(distribution: str) -> str:
    try:
        return metadata.version(distribution)
    except metadata.PackageNotFoundError:
        return "-"


def main() -> int:
    status = dict(ConfigValidator.validate_dependencies())
    for name, module in DEV_PACKAGES.items():
        status[name] = importlib.util.find_spec(module) is not None

    print("Checking required packages...")
    print("-" * 50)
    for name, found in status.items():
        mark = "✅" if found else "❌"
        print(f"{mark} {name:<16} {_version(name):<12} {'Installed' if found else 'Missing'}")

    missing = [name for name, found in status.items() if not found]
    print(f"\nInstalled: {len(status) - len(missing)} / {len(status)}")
    if missing:
        print("pip install " + " ".join(missing))
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
