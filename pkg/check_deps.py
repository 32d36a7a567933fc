#!/usr/bin/env python3
"""
Dependency checker for spinlink
"""
import sys


def check_dependencies():
    """Check if all required dependencies are installed."""
    print("Checking spinlink dependencies...")
    print("=" * 50)

    dependencies = [
        ("numpy", "numpy"),
        ("pydantic", "pydantic"),
        ("pydantic-settings", "pydantic_settings"),
        ("python-dotenv", "dotenv"),
        ("typer", "typer"),
        ("rich", "rich"),
    ]

    missing = []
    installed = []

    for name, module in dependencies:
        try:
            mod = __import__(module)
        except ImportError:
            missing.append(name)
            print(f"❌ {name:<18} - NOT INSTALLED")
            continue
        version = getattr(mod, "__version__", None)
        version = version or str(getattr(mod, "VERSION", "unknown"))
        installed.append((name, version))
        print(f"✅ {name:<18} - {version}")

    print("=" * 50)
    print(f"Installed: {len(installed)}")
    print(f"Missing:   {len(missing)}")

    if missing:
        print("\nTo install missing dependencies:")
        print("  pip3 install -r requirements.txt")
        print("  # OR manually:")
        print("  pip3 install " + " ".join(missing))
        return False
    print("\n🎉 All dependencies are installed!")
    return True


if __name__ == "__main__":
    success = check_dependencies()
    sys.exit(0 if success else 1)
