from setuptools import find_packages, setup

setup(
    name='py-ldpc-acwd',
    version='0.1.0',
    author='ldpc-acwd developers',
    packages=find_packages(exclude=['tests', 'tests.*']),
    include_package_data=True,
    license='LICENSE',
    description='Exact average coset weight distributions of LDPC ensembles, ' \
                'their combined (stacked, concatenated, shuffled) ensembles ' \
                'and asymptotic growth rates.',
    long_description=open('README.md').read(),
    long_description_content_type="text/markdown",
    install_requires=[
        "click",
        "jsonschema",
        "numpy",
        "scipy",
        "tqdm",
    ],
    extras_require={
        "test": ["pytest"],
    },
    entry_points={
        "console_scripts": [
            "ldpc-acwd=ldpc_acwd.cli:cli",
        ],
    },
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    python_requires='>=3.8',
)
