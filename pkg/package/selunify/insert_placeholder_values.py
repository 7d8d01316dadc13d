import toml

pyproject = toml.load("pyproject.toml")
version = pyproject["project"]["version"]
deps = pyproject["project"]["dependencies"]

# Fix conda meta.yaml
with open("package/selunify/recipe_template.yaml", "r") as f:
    text = f.read()

text = text.replace("BUILD_VERSION_PLACEHOLDER", version)
text = text.replace(
    "DEPENDENCY_PLACEHOLDER\n",
    "".join(["    - {}\n".format(dep.strip()) for dep in deps]),
)

with open("package/selunify/recipe.yaml", "w") as f:
    f.write(text)
