from invoke import Collection, Program

from . import config, eisenstein, hecke, reduce, scan, theta, transform
from .common import parse_errors


class JacobiProgram(Program):
    """invoke Program exiting with code 2 on unknown flags or missing arguments"""

    def parse_core(self, argv):
        with parse_errors():
            super().parse_core(argv)

    def parse_tasks(self):
        with parse_errors():
            super().parse_tasks()


tasks_ns = Collection()

tasks_ns.add_collection(config)
tasks_ns.add_collection(eisenstein)
tasks_ns.add_collection(hecke)
tasks_ns.add_collection(reduce)
tasks_ns.add_collection(scan)
tasks_ns.add_collection(theta)
tasks_ns.add_collection(transform)

program = JacobiProgram(namespace=tasks_ns, version="0.1.0")
