from setuptools import setup, find_packages

setup(
    name="double_algebra",
    version="0.1",
    packages=find_packages(where="src"),
    package_dir={"": "src"},
    install_requires=["sympy>=1.12"],
    entry_points={"console_scripts": ["double-algebra=double_algebra.cli:main"]},
)
