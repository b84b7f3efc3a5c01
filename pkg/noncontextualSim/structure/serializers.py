from rest_framework import serializers


class StructureSerializer(serializers.Serializer):
    """Universal set and cliques as label lists"""
    universal = serializers.ListField(child=serializers.CharField())
    cliques = serializers.SerializerMethodField()
    representatives = serializers.ListField(child=serializers.CharField())

    def get_cliques(self, obj):
        return [[op.label for op in clique] for clique in obj.cliques]


class CertificateSerializer(serializers.Serializer):
    """A contextuality certificate (A, B, C)"""
    triple = serializers.ListField(child=serializers.CharField())
