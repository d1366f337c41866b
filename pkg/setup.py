"""Setup for prodseries."""

from setuptools import setup

setup(
    name="prodseries",
    version="0.1.0",
    description="Exact coefficients of products of power series with constant term 1",
    author="jmerifjKriwe",
    packages=["prodseries"],
    install_requires=[
        "colorlog>=6.9.0",
        "numpy>=2.0",
        "voluptuous>=0.15.2",
    ],
    python_requires=">=3.12",
    entry_points={"console_scripts": ["prodseries=prodseries.cli:main"]},
    include_package_data=True,
    zip_safe=False,
)
