#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Report writer for analysis results.

Every analysis produces one document (a dict) that is written twice: as
sorted, indented JSON for machines and as a plain text rendition whose
tables come from pandas. Both are byte-stable for identical documents.
"""

import os
import json
import logging

import pandas as pd

logger = logging.getLogger(__name__)


class ReportWriter:
    """
    Writes JSON and text renditions of analysis documents.
    """

    def __init__(self, output_dir=None):
        """
        Initialize the report writer.

        Args:
            output_dir (str): Directory for relative report paths (cwd by default)
        """
        self.output_dir = output_dir or os.getcwd()

    def _resolve(self, path):
        if not os.path.isabs(path):
            path = os.path.join(self.output_dir, path)
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        return path

    @staticmethod
    def to_json(document):
        """Canonical JSON text: sorted keys, 2-space indent, trailing newline."""
        return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def write_json(self, document, path):
        """
        Persist the machine-readable document.

        Args:
            document (dict): Analysis document
            path (str): Target file

        Returns:
            str: Absolute path written
        """
        path = self._resolve(path)
        with open(path, 'w', encoding='utf-8', newline='\n') as f:
            f.write(self.to_json(document))
        logger.info(f"Report written to {path}")
        return path

    def write_text(self, text, path):
        """
        Persist the human-readable rendition.

        Returns:
            str: Absolute path written
        """
        path = self._resolve(path)
        with open(path, 'w', encoding='utf-8', newline='\n') as f:
            f.write(text if text.endswith("\n") else text + "\n")
        logger.info(f"Text report written to {path}")
        return path

    @staticmethod
    def table(rows, columns=None, index=None):
        """
        Render rows as a fixed-width table.

        Args:
            rows (list): List of dicts or list of lists
            columns (list): Column names (required for list rows)
            index (list): Row labels, omitted when None

        Returns:
            str: Table text
        """
        if not rows:
            return "(none)"
        frame = pd.DataFrame(rows, columns=columns, index=index)
        return frame.to_string(index=index is not None)

    @classmethod
    def render(cls, title, document):
        """
        Human rendition of a document.

        Scalars are printed as `key: value`, lists of dicts and label matrices
        (dicts holding `labels` and `rows`) as tables, anything else as
        compact JSON.

        Args:
            title (str): Heading
            document (dict): Analysis document

        Returns:
            str: Text report
        """
        lines = [title, "=" * len(title)]
        for key in sorted(document):
            value = document[key]
            if isinstance(value, dict) and 'rows' in value and 'labels' in value:
                lines.append(f"{key}:")
                lines.append(cls.table(value['rows'], columns=value['labels'], index=value['labels']))
            elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
                lines.append(f"{key}:")
                rows = [{k: cls._cell(v) for k, v in sorted(row.items())} for row in value]
                lines.append(cls.table(rows))
            elif isinstance(value, (str, int, float, bool)) or value is None:
                lines.append(f"{key}: {value}")
            else:
                lines.append(f"{key}: {json.dumps(value, sort_keys=True, ensure_ascii=False)}")
        return "\n".join(lines) + "\n"

    @staticmethod
    def _cell(value):
        if isinstance(value, (list, dict)):
            return json.dumps(value, sort_keys=True, ensure_ascii=False)
        return value
