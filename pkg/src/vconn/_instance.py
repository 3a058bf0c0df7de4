"""

    The InstanceOnDisk class objectifies a benchmark instance as it appears
    on the disk: an edge list plus a metadata sidecar (technically two files).

"""

import os
import datetime
import logging

import yaml

from vconn._graph import Graph, read_edge_list, write_edge_list

# pylint: disable=C0103 # allow non-snake case variable names

logger = logging.getLogger(__name__)


def path_to_yaml_path(path):
    """
    Given a path, return the corresponding yaml file path.
    /my/path/graph.txt --> /my/path/.graph.txt.yml
    """

    dir_name = os.path.dirname(path)
    basename = os.path.basename(path)

    return os.path.join(dir_name, f".{basename}.yml")


def parse_yaml(path):
    """From path, parse file as yaml, return data"""
    with open(path, "r") as stream:
        data = yaml.safe_load(stream)

    return data


def _datetime_now():
    return datetime.datetime.now().isoformat()


def write_instance(path, g: Graph, metadata: dict = None):
    """Write the edge list and its sidecar, return the sidecar path."""
    write_edge_list(path, g)

    record = {"n": g.n, "m": g.m // 2, "created": _datetime_now()}
    record.update(metadata or {})
    metadata_path = path_to_yaml_path(path)
    with open(metadata_path, "w") as stream:
        yaml.safe_dump(record, stream, sort_keys=False)

    logger.debug("Wrote %s and %s", path, metadata_path)
    return metadata_path


class InstanceOnDisk:
    def __init__(self, path: str, metadata_path=None):
        """
        path (str): Path to edge list
        metadata_path (str): Path to sidecar. If not provided, it is
                             derived from the edge list path. A missing
                             sidecar gives empty metadata.
        """
        self.metadata_path = metadata_path if metadata_path else path_to_yaml_path(path)
        self.path = os.path.abspath(path)
        self.basename = os.path.basename(self.path)

        if os.path.isfile(self.metadata_path):
            self.metadata = parse_yaml(self.metadata_path) or {}
        else:
            logger.debug("No metadata for %s", self.path)
            self.metadata = {}

        self._graph = None

    def __repr__(self):
        s = f"\n# {self.__class__}"
        s += f"\n# Disk path: {self.path}"
        if self.kappa is not None:
            s += f"\n# Reference kappa: {self.kappa}"
        return s

    @property
    def instance_id(self):
        return self.metadata.get("instance_id", self.basename)

    @property
    def kappa(self):
        """Reference connectivity claimed by the sidecar, if any"""
        return self.metadata.get("kappa")

    @property
    def graph(self) -> Graph:
        if self._graph is None:
            self._graph = read_edge_list(self.path)
        return self._graph
