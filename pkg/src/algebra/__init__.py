#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Order-algebra package: quantales, fuzzy sets and Q-orders.
"""
