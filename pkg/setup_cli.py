"""
Setup script for the austere-kit CLI
"""

from setuptools import setup, find_packages

setup(
    name="austere-kit",
    version="1.0.0",
    description="Numerical checks for austere submanifolds of CP^n and special Lagrangian normal bundles",
    author="austere-kit developers",
    packages=find_packages(exclude=["tests", "tests.*"]),
    install_requires=[
        "numpy>=1.24",
        "scipy>=1.10",
        "sympy>=1.12",
        "PyYAML>=6.0",
        "pydantic>=2.5",
        "pandas>=2.0",
        "matplotlib>=3.7",
    ],
    extras_require={
        "test": [
            "pytest>=7.0",
            "hypothesis>=6.80",
        ],
    },
    entry_points={
        "console_scripts": [
            "austere-kit=cli.austere_cli:main",
        ]
    },
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.9",
)
