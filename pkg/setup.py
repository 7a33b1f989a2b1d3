"""setup.py file."""
from setuptools import setup, find_packages

with open("requirements.txt", "r") as fs:
    reqs = [r for r in fs.read().splitlines() if (len(r) > 0 and not r.startswith("#"))]

setup(
    name="hilbert-lab",
    version="0.1.0",
    packages=find_packages(exclude=("test*",)),
    author="hilbert-lab contributors",
    description="Numerical lab for Hilbert geometries of planar convex domains",
    classifiers=[
        "Topic :: Scientific/Engineering :: Mathematics",
        "Programming Language :: Python",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Operating System :: POSIX :: Linux",
        "Operating System :: MacOS",
    ],
    python_requires=">=3.9",
    include_package_data=True,
    install_requires=reqs,
    entry_points={"console_scripts": ["hilbert-lab=hilbert_lab:main"]},
)
