#!/usr/bin/env python
# -*- coding: utf-8 -*-


def main():
    from setuptools import setup, find_packages

    version_dict = {}
    init_filename = "chirality/version.py"
    exec(
        compile(open(init_filename, "r").read(), init_filename, "exec"), version_dict
    )

    setup(
        name="chirality",
        version=version_dict["VERSION_TEXT"],
        description="Decide whether point pairs have a chiral two-view "
        "reconstruction",
        long_description=open("README.rst", "rt").read(),
        license="MIT",
        classifiers=[
            "Development Status :: 3 - Alpha",
            "Intended Audience :: Developers",
            "Intended Audience :: Science/Research",
            "License :: OSI Approved :: MIT License",
            "Natural Language :: English",
            "Programming Language :: Python",
            "Programming Language :: Python :: 3",
            "Topic :: Scientific/Engineering",
            "Topic :: Scientific/Engineering :: Image Recognition",
            "Topic :: Scientific/Engineering :: Mathematics",
            "Topic :: Software Development :: Libraries",
        ],
        packages=find_packages(exclude=["test", "examples*"]),
        python_requires="~=3.8",
        install_requires=[
            "numpy",
            "pytools>=2022.1.3",

            # DomainMatrix over QQ
            "sympy>=1.12",

            # linprog(method="highs"), linalg.null_space
            "scipy>=1.6",
        ],
        extras_require={
            "test": ["pytest>=2.3"],
            "plot": ["matplotlib"],
        },
        entry_points={
            "console_scripts": ["chirality=chirality.cli:main"],
        },
        package_data={"chirality": ["py.typed"]},
    )


if __name__ == "__main__":
    main()
