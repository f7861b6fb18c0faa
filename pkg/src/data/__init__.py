#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Input documents and the scenario registry.
"""
