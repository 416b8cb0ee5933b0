import setuptools

with open("README.md", "r") as fh:
    long_description = fh.read()

setuptools.setup(
    name="multiplicative_ising",
    version="0.1.0",
    description="Python package for multiplicative Ising models on semigroup lattices",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=setuptools.find_packages(exclude=["tests", "examples*"]),
    package_data={"multiplicative_ising.configs.spec": ["*.yaml"]},
    classifiers=[
        "Programming Language :: Python :: 3.9",
        "License :: OSI Approved :: MIT License",
        "Topic :: Scientific/Engineering :: Physics",
    ],
    python_requires=">=3.9",
    install_requires=[
        "numpy>=1.20",
        "scipy>=1.7",
        "pandas>=1.5",
        "pyyaml",
        "humanfriendly",
    ],
    extras_require={
        "test": ["pytest>=7"],
    },
)
