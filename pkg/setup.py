import setuptools

with open("README.md", "r") as fh:
    long_description = fh.read()

setuptools.setup(
    name="rotset",
    version="0.1.0",
    description="Exact rotation polygons of subshifts of finite type and rotation set estimates for torus maps",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=["rotset"],
    package_data={"rotset": ["data/*.json"]},
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: GNU Lesser General Public License v3 (LGPLv3)",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.9",
    install_requires=[
        "numpy>=1.20",
        "networkx>=2.5",
        "matplotlib>=3.3",
        "cjkwrap",
        "wcwidth",
    ],
    entry_points={"console_scripts": ["rotset = rotset:main"]},
)
