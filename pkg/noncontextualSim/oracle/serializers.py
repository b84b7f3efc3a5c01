from rest_framework import serializers


class OracleResultSerializer(serializers.Serializer):
    energy = serializers.FloatField()
    gap = serializers.FloatField(allow_null=True)
    degenerate = serializers.BooleanField()
    expectations = serializers.DictField(child=serializers.FloatField())
