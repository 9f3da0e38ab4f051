# Copyright 2024 jacobi-tools authors
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl.html)

import os

from invoke import task

from . import common


@task
def init(ctx):
    """Write the default configuration, keeping the keys already set"""
    path = common.config_path() or os.path.join(os.getcwd(), common.CONFIG_FILE_NAME)
    common.update_yml_file(path, common.DEFAULTS)
    print("Configuration written to {}".format(path))


@task(default=True)
def show(ctx):
    """Print the effective configuration"""
    common.dump_yml(dict(common.config()))
