from src.double_algebra import Corner, Field, check_axioms, solve_antipode, takeuchi_double
from src.double_algebra.cli import Workbench, format_element
from src.double_algebra.examples import (
    Groupoid, cyclic_group, family_oracles, groupoid_double, hopf_group_double, matrix_double,
)
from src.double_algebra.instance_file import load, load_json


def run_matrix_scenario(field):
    print("\n=== Running Matrix Scenario ===")

    D = matrix_double(2, field)
    print(f"Built {D.label} with basis {', '.join(D.basis_labels)}")

    # Base ideals and antipode
    for corner in Corner:
        print(f"dim {corner.value} = {D.ideal(corner).dimension}")
    S = solve_antipode(D)
    images = [f"S({label}) = {format_element(field, D.basis_labels, S(b))}"
              for label, b in zip(D.basis_labels, D.basis())]
    print(f"Antipode: {', '.join(images)}")
    print(f"Matches the transpose: {S.matrix == family_oracles(D).antipode}")


def run_group_scenario(field):
    print("\n=== Running Group Scenario ===")

    group = cyclic_group(3)
    D = hopf_group_double(group, field)
    print(f"Built {D.label} of dimension {D.dimension}")

    S = solve_antipode(D)
    for label, b in zip(D.basis_labels, D.basis()):
        print(f"S({label}) = {format_element(field, D.basis_labels, S(b))}")

    double, report = takeuchi_double(D)
    print(f"Takeuchi double: dimension {double.dimension}, checks passed = {report.passed}")


def run_groupoid_scenario(field):
    print("\n=== Running Groupoid Scenario ===")

    groupoid = Groupoid.from_dict(load_json('tests/test_data/z2_point_groupoid.json'))
    D = groupoid_double(groupoid, field)
    print(f"Built {D.label} on arrows {', '.join(D.basis_labels)}")
    for line in Workbench(D).dossier()[3:]:
        print(line)


def run_broken_scenario(field):
    print("\n=== Running Broken Instance Scenario ===")

    instance = load('tests/test_data/broken_a1.json')
    D = instance.double(field, check=False)
    report = check_axioms(D.vertical, D.horizontal, D.basis_labels)
    print(f"{D.label}: failing axioms {report.failed_axioms()}")
    first = report.first_failure()
    print(f"First failure: {first.name} at {first.witness.describe()}")


def main():
    field = Field(0)

    run_matrix_scenario(field)
    run_group_scenario(field)
    run_groupoid_scenario(field)
    run_broken_scenario(field)

    # Same tables in characteristic 3
    run_group_scenario(Field(3))


if __name__ == "__main__":
    main()
