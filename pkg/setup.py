"""Setup script for the spinlink package."""
from setuptools import setup, find_packages

dependencies = [
    "numpy>=1.26.0",
    "pydantic>=2.5.0",
    "pydantic-settings>=2.1.0",
    "python-dotenv>=1.0.0",
    "typer>=0.12.0",
    "rich>=13.0.0",
]

dev_dependencies = [
    "pytest>=7.4.0",
    "black>=23.0.0",
    "ruff>=0.1.0",
    "mypy>=1.0.0",
]

setup(
    name="spinlink",
    version="0.1.0",
    description=(
        "Exact verification of spinor identities over complexified "
        "quaternions and octonions"
    ),
    long_description=(
        "Structure tables, Gamma and Sigma generators, Lorentz transformations, "
        "gauge variations of the chiral Lagrangian and self-duality spectra, "
        "checked in exact rational arithmetic"
    ),
    long_description_content_type="text/plain",
    author="Spinlink",
    author_email="spinlink@example.com",
    python_requires=">=3.10",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    install_requires=dependencies,
    extras_require={
        "dev": dev_dependencies,
    },
    entry_points={
        "console_scripts": [
            "spinlink=spinlink.cli:main",
        ],
    },
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Topic :: Scientific/Engineering :: Physics",
    ],
)
