from setuptools import setup, find_packages

setup(
    name="crossdep",
    version="0.1.0",
    packages=find_packages(include=["crossdep", "crossdep.*"]),
    install_requires=[
        # Numerics
        "numpy>=1.22",
        "scipy>=1.9",
        "pandas>=1.5",

        # Config and records
        "pydantic>=2.0.0",
        "python-dotenv>=1.0.0",
    ],
    extras_require={
        "dev": [
            "pytest>=7.0.0",
            "pytest-cov>=4.0.0",
            "black>=23.0.0",
            "isort>=5.12.0",
            "mypy>=1.0.0",
        ],
    },
    entry_points={
        "console_scripts": ["crossdep=crossdep.cli:main"],
    },
    python_requires=">=3.9",
    description="Cross-sectional independence tests for panels with serially correlated errors",
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
)
