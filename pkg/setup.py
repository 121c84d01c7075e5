from setuptools import setup, find_packages

setup(
    name="gpc",
    version="0.1.0",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    install_requires=[
        'numpy>=1.22.0',
        'scipy>=1.8.0',
        'pandas>=1.5.0',
        'python-dotenv>=1.0.0',
    ],
    extras_require={
        'test': ['pytest>=7.0.0'],
    },
    entry_points={
        'console_scripts': ['gpc=gpc.main:main'],
    },
    description="General product correlations: factorization, certificates and witnesses",
    python_requires=">=3.8",
)
