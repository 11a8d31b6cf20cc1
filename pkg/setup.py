# -*- coding: utf-8 -*-
import setuptools

with open("README.md", "r") as readme, open("CHANGES.md", "r") as changes:
    long_description = '{0}\n\n{1}'.format(readme.read(), changes.read())

setuptools.setup(
    name="counterfact",
    version="0.1.0",
    author="André Costa",
    author_email="lokal.profil@gmail.com",
    description=("Truth values and exact probabilities of counterfactuals with "
                 "Boolean antecedents over discrete causal models."),
    long_description=long_description,
    long_description_content_type="text/markdown",
    url="https://github.com/lokal-profil/counterfact",
    packages=["counterfact"],
    include_package_data=True,
    package_data={"counterfact": ["data/*.cm", "data/*.sel"]},
    python_requires=">=3.7",
    install_requires=["lark", "networkx", "tqdm"],
    keywords=['causal models', 'counterfactuals', 'truthmakers', 'imaging'],
    license="MIT",
    classifiers=[
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.7",
        "Programming Language :: Python :: 3.8",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    entry_points={
        "console_scripts": [
            "counterfact=counterfact.__main__:main",
        ]
    },
)
