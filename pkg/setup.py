from setuptools import setup

version = "0.1.dev0"

long_description = "\n\n".join([open("README.rst").read(), open("CHANGES.rst").read()])

install_requires = ["numpy", "pandas", "simplejson", "sympy"]

tests_require = [
    "pytest",
    "mock",
    "pytest-cov",
    "pytest-flakes",
    "pytest-black",
    "jsonschema",
]

setup(
    name="taf-arithmetic",
    version=version,
    description="Exact arithmetic for Greek letter elements and chromatic level one",
    long_description=long_description,
    # Get strings from http://www.python.org/pypi?%3Aaction=list_classifiers
    classifiers=[
        "Programming Language :: Python",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    keywords=["number theory", "modular forms", "Bruhat-Tits buildings"],
    license="MIT",
    packages=["taf_arithmetic"],
    package_data={"taf_arithmetic": ["schema/*.json"]},
    include_package_data=True,
    zip_safe=False,
    install_requires=install_requires,
    tests_require=tests_require,
    extras_require={"test": tests_require},
    entry_points={
        "console_scripts": [
            "taf-arithmetic = taf_arithmetic.cli:main",
        ]
    },
)
